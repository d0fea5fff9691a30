//! Canonical subspaces of Q^n and quotient constructions.

use super::matrix::ExactMatrix;
use super::rational::Rational;
use super::ExactLinError;
use num::Zero;

/// A linear subspace of Q^n held in canonical form: the basis rows are the
/// nonzero rows of a reduced row echelon form, so two `Subspace` values are
/// equal as subspaces iff they are structurally equal.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    /// RREF basis rows; pivot columns strictly increasing, no zero rows.
    basis: Vec<Vec<Rational>>,
    /// Pivot column of each basis row.
    pivots: Vec<usize>,
}

impl Subspace {
    /// The zero subspace of Q^n.
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    /// All of Q^n.
    pub fn full(ambient: usize) -> Self {
        let id = ExactMatrix::identity(ambient);
        Subspace {
            ambient,
            basis: id.to_rows(),
            pivots: (0..ambient).collect(),
        }
    }

    /// The span of the given vectors inside Q^ambient.
    ///
    /// The generating set may be redundant or contain zero vectors; the
    /// canonical RREF basis is computed here.
    pub fn span(ambient: usize, vectors: &[Vec<Rational>]) -> Self {
        for v in vectors {
            assert_eq!(v.len(), ambient, "vector length differs from ambient");
        }
        if vectors.is_empty() {
            return Subspace::zero(ambient);
        }
        let rref = ExactMatrix::from_rows(vectors).rref();
        let basis: Vec<Vec<Rational>> = (0..rref.pivots.len())
            .map(|i| rref.matrix.row_vec(i))
            .collect();
        Subspace {
            ambient,
            basis,
            pivots: rref.pivots,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// The canonical RREF basis rows.
    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    /// Reduces `v` modulo this subspace: subtracts the unique combination of
    /// basis rows matching `v` on the pivot columns. The result is zero iff
    /// `v` lies in the subspace.
    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.ambient, "vector length differs from ambient");
        let mut w = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if !w[p].is_zero() {
                let f = w[p].clone();
                for (wi, bi) in w.iter_mut().zip(row) {
                    if !bi.is_zero() {
                        let sub = &f * bi;
                        *wi = &*wi - &sub;
                    }
                }
            }
        }
        w
    }

    /// Membership test.
    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// True if every basis vector of `other` lies in `self`.
    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        assert_eq!(self.ambient, other.ambient, "ambient dimensions differ");
        other.basis.iter().all(|v| self.contains(v))
    }

    /// Sum of subspaces.
    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "ambient dimensions differ");
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient, &vs)
    }

    /// Intersection of subspaces via the Zassenhaus block trick: row-reduce
    /// `[A | A; B | 0]`; the right blocks of the rows whose left block
    /// vanished form a basis of the intersection.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "ambient dimensions differ");
        let n = self.ambient;
        let mut rows = Vec::new();
        for v in &self.basis {
            let mut r = v.clone();
            r.extend(v.iter().cloned());
            rows.push(r);
        }
        for v in &other.basis {
            let mut r = v.clone();
            r.extend(std::iter::repeat(Rational::zero()).take(n));
            rows.push(r);
        }
        if rows.is_empty() {
            return Subspace::zero(n);
        }
        let rref = ExactMatrix::from_rows(&rows).rref();
        let mut inter = Vec::new();
        for i in 0..rref.pivots.len() {
            let row = rref.matrix.row_vec(i);
            if row[..n].iter().all(Zero::is_zero) {
                inter.push(row[n..].to_vec());
            }
        }
        Subspace::span(n, &inter)
    }

    /// A matrix `C` whose kernel is exactly this subspace: `v` lies in the
    /// subspace iff `C v = 0`. Rows of `C` form the canonical basis of the
    /// annihilator under the standard bilinear pairing.
    pub fn constraint_matrix(&self) -> ExactMatrix {
        if self.basis.is_empty() {
            return ExactMatrix::identity(self.ambient);
        }
        let b = ExactMatrix::from_rows(&self.basis);
        let ann = b.nullspace();
        if ann.dim() == 0 {
            // Full subspace: no constraints, a 0 x ambient matrix.
            return ExactMatrix::zero(0, self.ambient);
        }
        ExactMatrix::from_rows(ann.basis())
    }

    /// The preimage `{v in Q^cols : map v in target}` of a subspace under a
    /// linear map given as a `rows x cols` matrix acting on column vectors.
    pub fn preimage(map: &ExactMatrix, target: &Subspace) -> Subspace {
        assert_eq!(
            map.rows(),
            target.ambient_dim(),
            "map codomain differs from target ambient"
        );
        let c = target.constraint_matrix();
        c.mul(map).nullspace()
    }
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subspace(dim {} of Q^{})", self.dim(), self.ambient)
    }
}

/// Representatives completing a subspace to an enclosing space, together
/// with the data needed to express elements of the enclosing space in
/// quotient coordinates.
#[derive(Debug, Clone)]
pub struct QuotientBasis {
    sub: Subspace,
    /// Representative vectors whose classes form a basis of `within / sub`.
    reps: Vec<Vec<Rational>>,
}

impl QuotientBasis {
    /// Builds a quotient basis for `within / sub`.
    ///
    /// Fails with [`ExactLinError::NotContained`] when `sub` is not inside
    /// `within`. Representatives are chosen deterministically by scanning
    /// the canonical basis of `within` and keeping the vectors that grow
    /// the span.
    pub fn new(sub: &Subspace, within: &Subspace) -> Result<Self, ExactLinError> {
        assert_eq!(
            sub.ambient_dim(),
            within.ambient_dim(),
            "ambient dimensions differ"
        );
        for (i, v) in sub.basis().iter().enumerate() {
            if !within.contains(v) {
                return Err(ExactLinError::NotContained { row: i });
            }
        }
        let mut reps: Vec<Vec<Rational>> = Vec::new();
        let mut current = sub.clone();
        for v in within.basis() {
            if !current.contains(v) {
                reps.push(v.clone());
                current = current.sum(&Subspace::span(sub.ambient_dim(), &[v.clone()]));
            }
        }
        debug_assert_eq!(current.dim(), within.dim());
        Ok(QuotientBasis {
            sub: sub.clone(),
            reps,
        })
    }

    /// Dimension of the quotient.
    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// The chosen representatives.
    pub fn representatives(&self) -> &[Vec<Rational>] {
        &self.reps
    }

    /// Coordinates of the class of `v` with respect to the representative
    /// basis. Returns `None` when `v` does not lie in `sub + span(reps)`.
    pub fn project(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        let n = self.sub.ambient_dim();
        assert_eq!(v.len(), n, "vector length differs from ambient");
        // Solve [sub_basis^T | reps^T] * lambda = v and read off the
        // coefficients attached to the representatives.
        let mut cols: Vec<Vec<Rational>> = self.sub.basis().to_vec();
        cols.extend(self.reps.iter().cloned());
        if cols.is_empty() {
            return if v.iter().all(Zero::is_zero) {
                Some(Vec::new())
            } else {
                None
            };
        }
        let a = ExactMatrix::from_rows(&cols).transpose();
        let lambda = a.solve(v)?;
        Some(lambda[self.sub.dim()..].to_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::super::rational::rat;
    use super::*;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| rat(x, 1)).collect()
    }

    #[test]
    fn span_is_canonical() {
        let a = Subspace::span(3, &[v(&[1, 1, 0]), v(&[0, 0, 1])]);
        let b = Subspace::span(3, &[v(&[2, 2, 2]), v(&[0, 0, 5]), v(&[1, 1, 1])]);
        assert_eq!(a, b);
    }

    #[test]
    fn membership_and_reduction() {
        let s = Subspace::span(3, &[v(&[1, 0, 1]), v(&[0, 1, 1])]);
        assert!(s.contains(&v(&[1, 1, 2])));
        assert!(!s.contains(&v(&[0, 0, 1])));
        assert!(s.reduce(&v(&[1, 1, 2])).iter().all(Zero::is_zero));
    }

    #[test]
    fn intersect_matches_constraint_route() {
        let a = Subspace::span(4, &[v(&[1, 0, 0, 0]), v(&[0, 1, 0, 0]), v(&[0, 0, 1, 0])]);
        let b = Subspace::span(4, &[v(&[0, 1, 0, 0]), v(&[0, 0, 1, 1])]);
        let i = a.intersect(&b);
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&v(&[0, 1, 0, 0])));
        // Independent route: stack both constraint matrices and take the kernel.
        let c = a.constraint_matrix().stack(&b.constraint_matrix());
        assert_eq!(i, c.nullspace());
    }

    #[test]
    fn preimage_of_zero_is_kernel() {
        let f = ExactMatrix::from_rows(&[v(&[1, 2, 3]), v(&[0, 1, 1])]);
        let pre = Subspace::preimage(&f, &Subspace::zero(2));
        assert_eq!(pre, f.nullspace());
        let all = Subspace::preimage(&f, &Subspace::full(2));
        assert_eq!(all, Subspace::full(3));
    }

    #[test]
    fn quotient_basis_dimension_and_projection() {
        let sub = Subspace::span(3, &[v(&[1, 0, 0])]);
        let within = Subspace::full(3);
        let q = QuotientBasis::new(&sub, &within).unwrap();
        assert_eq!(q.dim(), 2);
        // Projection kills the subspace and is the identity on representatives.
        assert!(q.project(&v(&[7, 0, 0])).unwrap().iter().all(Zero::is_zero));
        let reps = q.representatives().to_vec();
        for (i, r) in reps.iter().enumerate() {
            let coords = q.project(r).unwrap();
            for (j, c) in coords.iter().enumerate() {
                assert_eq!(*c, rat((i == j) as i64, 1));
            }
        }
    }

    #[test]
    fn quotient_rejects_non_contained_sub() {
        let sub = Subspace::span(3, &[v(&[0, 0, 1])]);
        let within = Subspace::span(3, &[v(&[1, 0, 0]), v(&[0, 1, 0])]);
        assert!(QuotientBasis::new(&sub, &within).is_err());
    }

    #[test]
    fn zero_dimensional_ambient() {
        let s = Subspace::zero(0);
        assert_eq!(s.dim(), 0);
        assert!(s.contains(&[]));
        let q = QuotientBasis::new(&s, &Subspace::full(0)).unwrap();
        assert_eq!(q.dim(), 0);
        assert_eq!(q.project(&[]).unwrap(), Vec::<Rational>::new());
    }
}
