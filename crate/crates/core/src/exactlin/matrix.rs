//! Sparse exact matrices and reduced row echelon form.

use super::rational::Rational;
use super::subspace::Subspace;
use num::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Column-count threshold below which row reduction switches to a dense
/// working representation. Both paths produce the same canonical RREF;
/// the dense path just avoids map overhead on small problems.
const DENSE_COLUMN_LIMIT: usize = 64;

/// A sparse `rows x cols` matrix over Q. Zero entries are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Rational>,
}

/// The result of row reduction: the canonical reduced row echelon form
/// together with the pivot columns in increasing order.
#[derive(Debug, Clone)]
pub struct RrefResult {
    pub matrix: ExactMatrix,
    pub pivots: Vec<usize>,
}

impl ExactMatrix {
    /// The `rows x cols` zero matrix.
    pub fn zero(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    /// The `n x n` identity.
    pub fn identity(n: usize) -> Self {
        let mut m = ExactMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds a matrix from dense rows. All rows must have equal length.
    pub fn from_rows(rows: &[Vec<Rational>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut m = ExactMatrix::zero(nrows, ncols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Number of stored (nonzero) entries.
    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// The entry at `(i, j)`; zero if unset.
    pub fn get(&self, i: usize, j: usize) -> Rational {
        assert!(i < self.rows && j < self.cols, "index out of range");
        self.entries
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Sets the entry at `(i, j)`, removing it from storage when zero.
    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        assert!(i < self.rows && j < self.cols, "index out of range");
        if v.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    /// Adds `v` into the entry at `(i, j)`.
    pub fn add_to(&mut self, i: usize, j: usize, v: &Rational) {
        let cur = self.get(i, j);
        self.set(i, j, cur + v);
    }

    /// Row `i` as a dense vector.
    pub fn row_vec(&self, i: usize) -> Vec<Rational> {
        assert!(i < self.rows);
        let mut out = vec![Rational::zero(); self.cols];
        for ((_, j), v) in self.entries.range((i, 0)..(i + 1, 0)) {
            out[*j] = v.clone();
        }
        out
    }

    /// All rows as dense vectors.
    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row_vec(i)).collect()
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = ExactMatrix::zero(self.rows, other.cols);
        // Sparse row-by-row accumulation over self's stored entries.
        for ((i, k), a) in &self.entries {
            for ((_, j), b) in other.entries.range((*k, 0)..(*k + 1, 0)) {
                out.add_to(*i, *j, &(a * b));
            }
        }
        out
    }

    /// Matrix-vector product `self * v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len(), "vector length differs from columns");
        let mut out = vec![Rational::zero(); self.rows];
        for ((i, j), a) in &self.entries {
            if !v[*j].is_zero() {
                out[*i] += a * &v[*j];
            }
        }
        out
    }

    /// Vertical stack: `self` on top of `other` (equal column counts).
    pub fn stack(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, other.cols, "column counts differ");
        let mut out = ExactMatrix::zero(self.rows + other.rows, self.cols);
        for ((i, j), v) in &self.entries {
            out.set(*i, *j, v.clone());
        }
        for ((i, j), v) in &other.entries {
            out.set(self.rows + *i, *j, v.clone());
        }
        out
    }

    /// Horizontal concatenation: `[self | other]` (equal row counts).
    pub fn augment(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.rows, other.rows, "row counts differ");
        let mut out = ExactMatrix::zero(self.rows, self.cols + other.cols);
        for ((i, j), v) in &self.entries {
            out.set(*i, *j, v.clone());
        }
        for ((i, j), v) in &other.entries {
            out.set(*i, self.cols + *j, v.clone());
        }
        out
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut out = ExactMatrix::zero(self.cols, self.rows);
        for ((i, j), v) in &self.entries {
            out.set(*j, *i, v.clone());
        }
        out
    }

    /// Canonical reduced row echelon form with unit pivots, zeros above and
    /// below each pivot, and pivot columns strictly increasing.
    ///
    /// The RREF of a matrix is unique, so this is a canonical form: two
    /// matrices have the same row space iff their RREFs share the same
    /// nonzero rows.
    pub fn rref(&self) -> RrefResult {
        if self.cols < DENSE_COLUMN_LIMIT {
            self.rref_dense()
        } else {
            self.rref_sparse()
        }
    }

    fn rref_dense(&self) -> RrefResult {
        let mut a = self.to_rows();
        let (m, n) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..n {
            if r >= m {
                break;
            }
            let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            let inv = a[r][c].clone();
            for x in a[r].iter_mut() {
                if !x.is_zero() {
                    *x = &*x / &inv;
                }
            }
            for i in 0..m {
                if i != r && !a[i][c].is_zero() {
                    let f = a[i][c].clone();
                    for j in c..n {
                        if !a[r][j].is_zero() {
                            let sub = &f * &a[r][j];
                            a[i][j] = &a[i][j] - &sub;
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        RrefResult {
            matrix: ExactMatrix::from_rows(&a),
            pivots,
        }
    }

    fn rref_sparse(&self) -> RrefResult {
        // Rows as sparse column -> value maps.
        let mut rows: Vec<BTreeMap<usize, Rational>> = vec![BTreeMap::new(); self.rows];
        for ((i, j), v) in &self.entries {
            rows[*i].insert(*j, v.clone());
        }
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r >= rows.len() {
                break;
            }
            let Some(p) = (r..rows.len()).find(|&i| rows[i].get(&c).is_some_and(|v| !v.is_zero()))
            else {
                continue;
            };
            rows.swap(r, p);
            let inv = rows[r][&c].clone();
            if !inv.is_one() {
                for v in rows[r].values_mut() {
                    *v = &*v / &inv;
                }
            }
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i == r {
                    continue;
                }
                let Some(f) = row.get(&c).cloned() else {
                    continue;
                };
                if f.is_zero() {
                    row.remove(&c);
                    continue;
                }
                for (j, pv) in &pivot_row {
                    let delta = &f * pv;
                    let cur = row.remove(j).unwrap_or_else(Rational::zero);
                    let new = cur - delta;
                    if !new.is_zero() {
                        row.insert(*j, new);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        let mut out = ExactMatrix::zero(self.rows, self.cols);
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row {
                out.set(i, *j, v.clone());
            }
        }
        RrefResult {
            matrix: out,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Solves `self * x = rhs` exactly. Returns the particular solution
    /// with every free variable set to zero, or `None` when inconsistent.
    pub fn solve(&self, rhs: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(rhs.len(), self.rows, "rhs length differs from rows");
        let mut rhs_col = ExactMatrix::zero(self.rows, 1);
        for (i, v) in rhs.iter().enumerate() {
            rhs_col.set(i, 0, v.clone());
        }
        let aug = self.augment(&rhs_col).rref();
        // Inconsistent iff some pivot lands in the appended column.
        if aug.pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (row, &pc) in aug.pivots.iter().enumerate() {
            x[pc] = aug.matrix.get(row, self.cols);
        }
        Some(x)
    }

    /// The kernel `{x : self * x = 0}` as a canonical subspace of Q^cols.
    ///
    /// Basis vectors are derived from the free columns of the RREF (one
    /// basis vector per free column, with a 1 in that coordinate).
    pub fn nullspace(&self) -> Subspace {
        let rref = self.rref();
        let pivot_set: Vec<usize> = rref.pivots.clone();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for (row, &pc) in pivot_set.iter().enumerate() {
                let coeff = rref.matrix.get(row, free);
                if !coeff.is_zero() {
                    v[pc] = -coeff;
                }
            }
            basis.push(v);
        }
        Subspace::span(self.cols, &basis)
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self
                .row_vec(i)
                .iter()
                .map(super::rational::format_rational)
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::super::rational::rat;
    use super::*;

    fn m(rows: &[&[i64]]) -> ExactMatrix {
        let rows: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| rat(x, 1)).collect())
            .collect();
        ExactMatrix::from_rows(&rows)
    }

    #[test]
    fn rref_is_canonical_and_idempotent() {
        let a = m(&[&[2, 4, 6], &[1, 2, 4], &[0, 0, 1]]);
        let r = a.rref();
        assert_eq!(r.pivots, vec![0, 2]);
        let again = r.matrix.rref();
        assert_eq!(again.matrix, r.matrix);
    }

    #[test]
    fn rref_of_row_permutation_agrees() {
        let a = m(&[&[0, 1, 2], &[3, 0, 1]]);
        let b = m(&[&[3, 0, 1], &[0, 1, 2]]);
        assert_eq!(a.rref().matrix, b.rref().matrix);
    }

    #[test]
    fn solve_inconsistent_returns_none() {
        let a = m(&[&[1, 1], &[1, 1]]);
        assert!(a.solve(&[rat(1, 1), rat(2, 1)]).is_none());
    }

    #[test]
    fn solve_zeroes_free_variables() {
        // x + y = 3 has family (3 - y, y); the canonical answer picks y = 0.
        let a = m(&[&[1, 1]]);
        let x = a.solve(&[rat(3, 1)]).unwrap();
        assert_eq!(x, vec![rat(3, 1), rat(0, 1)]);
    }

    #[test]
    fn zero_and_empty_shapes() {
        let z = ExactMatrix::zero(0, 3);
        assert_eq!(z.rank(), 0);
        assert_eq!(z.nullspace().dim(), 3);
        let z2 = ExactMatrix::zero(3, 0);
        assert_eq!(z2.rank(), 0);
        assert_eq!(z2.nullspace().dim(), 0);
        let zm = ExactMatrix::zero(2, 2);
        assert_eq!(zm.rank(), 0);
        assert_eq!(zm.solve(&[rat(0, 1), rat(0, 1)]).unwrap(), vec![rat(0, 1); 2]);
    }

    #[test]
    fn nullspace_vectors_are_killed_by_matrix() {
        let a = m(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0]]);
        let ns = a.nullspace();
        assert_eq!(ns.dim(), 2);
        for v in ns.basis() {
            assert!(a.mul_vec(v).iter().all(num::Zero::is_zero));
        }
    }

    #[test]
    fn sparse_and_dense_paths_agree() {
        // Same matrix content embedded in a wide (sparse-path) and a narrow
        // (dense-path) ambient; pivot structure must match column-for-column.
        let narrow = m(&[&[0, 2, 1], &[1, 1, 0], &[1, 3, 1]]);
        let mut wide = ExactMatrix::zero(3, 80);
        for i in 0..3 {
            for j in 0..3 {
                wide.set(i, j, narrow.get(i, j));
            }
        }
        let rn = narrow.rref();
        let rw = wide.rref();
        assert_eq!(rn.pivots, rw.pivots);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(rn.matrix.get(i, j), rw.matrix.get(i, j));
            }
        }
    }
}
