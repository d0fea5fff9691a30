//! Monoidal structure on constraint triples: weak and strong tensor
//! products, the unit, the internal hom, and the explicit monoidality
//! isomorphism for the reduction functor.
//!
//! The weak tensor product takes `W ⊗ W'` as observables and
//! `N ⊗ W' + W ⊗ N'` as null part; the strong tensor product enlarges
//! both by `N ⊗ T' + T ⊗ N'`, making the null part absorb ambient
//! factors. The internal hom applies the mapping conditions degreewise:
//! a hom element of degree `s` is observable when it maps `W` into `W'`
//! and `N` into `N'` in every degree, and null when it maps `W` into
//! `N'`. (The grading convention: conditions are imposed per source
//! degree, the degreewise reading of the ungraded definition.)
//!
//! All subspaces are computed exactly: tensor parts as spans of basis
//! products, hom parts as nullspaces of the linearized mapping
//! conditions.

use super::{ConstraintError, ConstraintTriple};
use crate::exactlin::{ExactMatrix, Rational, Subspace};
use crate::graded::GradedSpace;
use num::Zero;
use std::collections::BTreeMap;

/// The flat coordinates of `u (x) v` inside the tensor component of
/// degree `p + q`.
fn tensor_vector(
    a: &GradedSpace,
    b: &GradedSpace,
    p: i64,
    u: &[Rational],
    q: i64,
    v: &[Rational],
) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.tensor(b).dim(p + q)];
    for (i, x) in u.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in v.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            let (_, idx) = a.tensor_index(b, p, i, q, j);
            out[idx] = x * y;
        }
    }
    out
}

/// Collects `X ⊗ Y` basis products per target degree.
fn tensor_spans(
    a: &ConstraintTriple,
    b: &ConstraintTriple,
    left: impl Fn(i64) -> Subspace,
    right: impl Fn(i64) -> Subspace,
    into: &mut BTreeMap<i64, Vec<Vec<Rational>>>,
) {
    for p in a.degrees() {
        let lx = left(p);
        if lx.dim() == 0 {
            continue;
        }
        for q in b.degrees() {
            let rx = right(q);
            if rx.dim() == 0 {
                continue;
            }
            let bucket = into.entry(p + q).or_default();
            for u in lx.basis() {
                for v in rx.basis() {
                    bucket.push(tensor_vector(a.ambient(), b.ambient(), p, u, q, v));
                }
            }
        }
    }
}

fn spans_to_subspaces(
    ambient: &GradedSpace,
    spans: BTreeMap<i64, Vec<Vec<Rational>>>,
) -> BTreeMap<i64, Subspace> {
    spans
        .into_iter()
        .map(|(d, vecs)| (d, Subspace::span(ambient.dim(d), &vecs)))
        .collect()
}

/// The weak tensor product: observables `W ⊗ W'`, null part
/// `N ⊗ W' + W ⊗ N'`.
pub fn ctensor(a: &ConstraintTriple, b: &ConstraintTriple) -> ConstraintTriple {
    let ambient = a.ambient().tensor(b.ambient());
    let mut w = BTreeMap::new();
    let mut n = BTreeMap::new();
    tensor_spans(a, b, |p| a.w_at(p), |q| b.w_at(q), &mut w);
    tensor_spans(a, b, |p| a.n_at(p), |q| b.w_at(q), &mut n);
    tensor_spans(a, b, |p| a.w_at(p), |q| b.n_at(q), &mut n);
    ConstraintTriple::new(
        ambient.clone(),
        spans_to_subspaces(&ambient, w),
        spans_to_subspaces(&ambient, n),
    )
    .expect("tensor parts satisfy the containments by construction")
}

/// The strong tensor product: both parts absorb `N ⊗ T' + T ⊗ N'`.
pub fn cstrong_tensor(a: &ConstraintTriple, b: &ConstraintTriple) -> ConstraintTriple {
    let ambient = a.ambient().tensor(b.ambient());
    let full_a = |p: i64| Subspace::full(a.ambient().dim(p));
    let full_b = |q: i64| Subspace::full(b.ambient().dim(q));
    let mut w = BTreeMap::new();
    let mut n = BTreeMap::new();
    tensor_spans(a, b, |p| a.w_at(p), |q| b.w_at(q), &mut w);
    for bucket in [&mut w, &mut n] {
        tensor_spans(a, b, |p| a.n_at(p), full_b, bucket);
        tensor_spans(a, b, full_a, |q| b.n_at(q), bucket);
    }
    ConstraintTriple::new(
        ambient.clone(),
        spans_to_subspaces(&ambient, w),
        spans_to_subspaces(&ambient, n),
    )
    .expect("strong tensor parts satisfy the containments by construction")
}

/// The monoidal unit `(k, k, 0)`, concentrated in degree 0.
pub fn cunit() -> ConstraintTriple {
    ConstraintTriple::everything_observable(GradedSpace::concentrated(0, 1, "k"))
}

/// Basis bookkeeping for the internal hom component of degree `s`: flat
/// coordinates run over `(p, r, c)` with `p` ascending, then row-major
/// blocks `Hom(A^p, B^{p+s})`.
struct HomLayout {
    /// `(source degree, block offset, target dim, source dim)`.
    blocks: Vec<(i64, usize, usize, usize)>,
    total: usize,
}

impl HomLayout {
    fn new(a: &GradedSpace, b: &GradedSpace, s: i64) -> Self {
        let mut blocks = Vec::new();
        let mut total = 0;
        for p in a.degrees() {
            let rows = b.dim(p + s);
            let cols = a.dim(p);
            if rows > 0 && cols > 0 {
                blocks.push((p, total, rows, cols));
                total += rows * cols;
            }
        }
        HomLayout { blocks, total }
    }

    fn flat(&self, p: i64, r: usize, c: usize) -> usize {
        let (_, offset, _, cols) = *self
            .blocks
            .iter()
            .find(|(pp, ..)| *pp == p)
            .expect("degree present in layout");
        offset + r * cols + c
    }
}

/// Rows enforcing `f(x) ∈ sub` for every basis vector `x` of `of`, as
/// linear conditions on the flat hom coordinates.
fn mapping_condition_rows(
    layout: &HomLayout,
    p: i64,
    of: &Subspace,
    target: &Subspace,
    rows: &mut Vec<Vec<Rational>>,
) {
    if of.dim() == 0 {
        return;
    }
    let constraints = target.constraint_matrix();
    if constraints.rows() == 0 {
        return;
    }
    let tdim = target.ambient_dim();
    for x in of.basis() {
        for k in 0..constraints.rows() {
            let mut row = vec![Rational::zero(); layout.total];
            for r in 0..tdim {
                let ck = constraints.get(k, r);
                if ck.is_zero() {
                    continue;
                }
                for (c, xc) in x.iter().enumerate() {
                    if !xc.is_zero() {
                        row[layout.flat(p, r, c)] = &ck * xc;
                    }
                }
            }
            rows.push(row);
        }
    }
}

/// The internal hom `iHom(A, B)`: ambient `Hom(A_T, B_T)` degreewise;
/// observable part the maps with `f(W) ⊆ W'` and `f(N) ⊆ N'`; null part
/// the maps with `f(W) ⊆ N'`.
pub fn cihom(a: &ConstraintTriple, b: &ConstraintTriple) -> ConstraintTriple {
    // Hom degrees: every difference of a target and a source degree.
    let mut degrees: Vec<i64> = Vec::new();
    for p in a.degrees() {
        for t in b.degrees() {
            if !degrees.contains(&(t - p)) {
                degrees.push(t - p);
            }
        }
    }
    degrees.sort_unstable();

    let mut ambient = GradedSpace::new();
    let mut w = BTreeMap::new();
    let mut n = BTreeMap::new();
    for &s in &degrees {
        let layout = HomLayout::new(a.ambient(), b.ambient(), s);
        if layout.total == 0 {
            continue;
        }
        let mut labels = Vec::with_capacity(layout.total);
        for &(p, _, rows, cols) in &layout.blocks {
            for r in 0..rows {
                for c in 0..cols {
                    labels.push(format!("h{p}.{r}.{c}"));
                }
            }
        }
        ambient = ambient.with_component(s, labels);

        let mut w_rows = Vec::new();
        let mut n_rows = Vec::new();
        for &(p, ..) in &layout.blocks {
            let (wa, na) = (a.w_at(p), a.n_at(p));
            let (wb, nb) = (b.w_at(p + s), b.n_at(p + s));
            mapping_condition_rows(&layout, p, &wa, &wb, &mut w_rows);
            mapping_condition_rows(&layout, p, &na, &nb, &mut w_rows);
            mapping_condition_rows(&layout, p, &wa, &nb, &mut n_rows);
        }
        let nullspace = |rows: Vec<Vec<Rational>>| {
            if rows.is_empty() {
                Subspace::full(layout.total)
            } else {
                ExactMatrix::from_rows(&rows).nullspace()
            }
        };
        w.insert(s, nullspace(w_rows));
        n.insert(s, nullspace(n_rows));
    }
    ConstraintTriple::new(ambient, w, n)
        .expect("hom null maps satisfy the observable conditions (N ⊆ W ⊆ T gives both)")
}

/// The explicit monoidality isomorphism `red(a) ⊗ red(b) → red(a ⊗ b)`:
/// one invertible matrix per degree, sending the class of `u ⊗ v` (for
/// quotient representatives `u`, `v`) to the class of the product.
#[derive(Debug, Clone)]
pub struct MonoidalityWitness {
    pub blocks: BTreeMap<i64, ExactMatrix>,
    pub total_dim: usize,
}

/// Checks `red(a ⊗ b) ≅ red(a) ⊗ red(b)` by dimensions and by the
/// canonical comparison map, returned as the witness when invertible.
pub fn monoidality_witness(
    a: &ConstraintTriple,
    b: &ConstraintTriple,
) -> Result<MonoidalityWitness, ConstraintError> {
    let ra = a.reduce()?;
    let rb = b.reduce()?;
    let tensor = ctensor(a, b);
    let rt = tensor.reduce()?;
    let product = ra.space().tensor(rb.space());

    let mut degrees = product.degrees();
    for d in rt.space().degrees() {
        if !degrees.contains(&d) {
            degrees.push(d);
        }
    }
    degrees.sort_unstable();

    let mut blocks = BTreeMap::new();
    let mut total_dim = 0;
    for s in degrees {
        let cols = product.dim(s);
        let rows = rt.dim(s);
        if cols != rows {
            return Err(ConstraintError::Monoidality {
                degree: s,
                witness: format!("red(a)⊗red(b) has dimension {cols}, red(a⊗b) has {rows}"),
            });
        }
        if cols == 0 {
            continue;
        }
        // Columns in the basis order of the tensor of reduced spaces:
        // left degree ascending, then left index, then right index.
        let mut m = ExactMatrix::zero(rows, cols);
        let mut col = 0;
        for p in ra.space().degrees() {
            let q = s - p;
            for i in 0..ra.dim(p) {
                for j in 0..rb.dim(q) {
                    let u = ra.representative(p, i);
                    let v = rb.representative(q, j);
                    let prod = tensor_vector(a.ambient(), b.ambient(), p, &u, q, &v);
                    let class = rt.project(s, &prod).ok_or_else(|| {
                        ConstraintError::Monoidality {
                            degree: s,
                            witness: "product of W-representatives leaves W ⊗ W'".into(),
                        }
                    })?;
                    for (r, val) in class.into_iter().enumerate() {
                        m.set(r, col, val);
                    }
                    col += 1;
                }
            }
        }
        if m.rank() != rows {
            return Err(ConstraintError::Monoidality {
                degree: s,
                witness: format!(
                    "comparison matrix has rank {} on a {rows}-dimensional component",
                    m.rank()
                ),
            });
        }
        total_dim += rows;
        blocks.insert(s, m);
    }
    Ok(MonoidalityWitness { blocks, total_dim })
}

/// Monoidality over a seeded family of triple pairs; returns the number
/// of pairs checked.
pub fn check_monoidality(seed: u64, pairs: usize) -> Result<usize, ConstraintError> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0;
    for _ in 0..pairs {
        let a = super::random_triple(&mut rng, &[-1, 0, 1], 4);
        let b = super::random_triple(&mut rng, &[0, 1], 4);
        monoidality_witness(&a, &b)?;
        checked += 1;
    }
    Ok(checked)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rat;

    fn unit_vec(dim: usize, i: usize) -> Vec<Rational> {
        let mut v = vec![rat(0, 1); dim];
        v[i] = rat(1, 1);
        v
    }

    /// A fixed small triple: T = Q^2 ⊕ Q^3 in degrees 0, 1; W and N
    /// hand-picked.
    fn fixture() -> ConstraintTriple {
        let ambient = GradedSpace::new()
            .with_component(0, vec!["a0".into(), "a1".into()])
            .with_component(1, vec!["b0".into(), "b1".into(), "b2".into()]);
        let mut w = BTreeMap::new();
        w.insert(0, Subspace::span(2, &[unit_vec(2, 0)]));
        w.insert(
            1,
            Subspace::span(3, &[unit_vec(3, 0), vec![rat(0, 1), rat(1, 1), rat(1, 1)]]),
        );
        let mut n = BTreeMap::new();
        n.insert(1, Subspace::span(3, &[vec![rat(0, 1), rat(1, 1), rat(1, 1)]]));
        ConstraintTriple::new(ambient, w, n).unwrap()
    }

    #[test]
    fn unit_is_neutral_for_the_weak_tensor() {
        let a = fixture();
        let ua = ctensor(&cunit(), &a);
        // The flat identification k ⊗ V^d = V^d is the identity on
        // coordinates, so the subspaces must match on the nose.
        for d in a.degrees() {
            assert_eq!(ua.w_at(d), a.w_at(d), "W in degree {d}");
            assert_eq!(ua.n_at(d), a.n_at(d), "N in degree {d}");
        }
        assert_eq!(ua.ambient().degrees(), a.ambient().degrees());
    }

    #[test]
    fn weak_tensor_dimensions_and_containment() {
        let a = fixture();
        let b = fixture();
        let t = ctensor(&a, &b);
        for d in t.degrees() {
            assert!(t.w_at(d).contains_subspace(&t.n_at(d)));
        }
        // Degree 0: W⊗W has dim 1·1 = 1; N-part is zero (no N in
        // degree 0 factors).
        assert_eq!(t.w_at(0).dim(), 1);
        assert_eq!(t.n_at(0).dim(), 0);
        // Degree 1: W0⊗W1 + W1⊗W0, dims 1·2 + 2·1 = 4, independent by
        // block position; N-part: W0⊗N1 + N1⊗W0, dims 1 + 1.
        assert_eq!(t.w_at(1).dim(), 4);
        assert_eq!(t.n_at(1).dim(), 2);
    }

    #[test]
    fn strong_tensor_absorbs_ambient_factors() {
        let a = fixture();
        let b = fixture();
        let s = cstrong_tensor(&a, &b);
        // N ⊗ T' and T ⊗ N' sit inside the strong null part.
        let mut spans: BTreeMap<i64, Vec<Vec<Rational>>> = BTreeMap::new();
        tensor_spans(
            &a,
            &b,
            |p| a.n_at(p),
            |q| Subspace::full(b.ambient().dim(q)),
            &mut spans,
        );
        tensor_spans(
            &a,
            &b,
            |p| Subspace::full(a.ambient().dim(p)),
            |q| b.n_at(q),
            &mut spans,
        );
        for (d, vecs) in spans {
            let sub = Subspace::span(s.ambient().dim(d), &vecs);
            assert!(s.n_at(d).contains_subspace(&sub), "degree {d}");
            assert!(s.w_at(d).contains_subspace(&s.n_at(d)), "degree {d}");
        }
        // The weak null part is contained in the strong one.
        let weak = ctensor(&a, &b);
        for d in weak.degrees() {
            assert!(s.n_at(d).contains_subspace(&weak.n_at(d)));
        }
    }

    #[test]
    fn hom_dimensions_match_hand_count() {
        // A = (Q^2, span(e0), 0), B = (Q^2, span(e0), 0), both in
        // degree 0. Hom component: 2x2 matrices, dim 4.
        // W: f(e0) ∈ span(e0) kills one entry → dim 3.
        // N: f(e0) = 0 kills a full column → dim 2.
        let ambient = GradedSpace::concentrated(0, 2, "e");
        let mut w = BTreeMap::new();
        w.insert(0, Subspace::span(2, &[unit_vec(2, 0)]));
        let a = ConstraintTriple::new(ambient, w, BTreeMap::new()).unwrap();
        let h = cihom(&a, &a);
        assert_eq!(h.ambient().dim(0), 4);
        assert_eq!(h.w_at(0).dim(), 3);
        assert_eq!(h.n_at(0).dim(), 2);
        assert!(h.w_at(0).contains_subspace(&h.n_at(0)));
    }

    #[test]
    fn hom_grading_is_degreewise() {
        // Source in degree 0, target in degree 1: all of Hom sits in
        // degree 1.
        let a = ConstraintTriple::everything_observable(GradedSpace::concentrated(0, 2, "a"));
        let b = ConstraintTriple::everything_observable(GradedSpace::concentrated(1, 3, "b"));
        let h = cihom(&a, &b);
        assert_eq!(h.degrees(), vec![1]);
        assert_eq!(h.ambient().dim(1), 6);
        // Everything observable on both sides: W is everything, N is
        // the maps landing in N' = 0.
        assert_eq!(h.w_at(1).dim(), 6);
        assert_eq!(h.n_at(1).dim(), 0);
    }

    #[test]
    fn monoidality_holds_on_seeded_pairs() {
        let checked = check_monoidality(5, 10).expect("monoidality holds");
        assert_eq!(checked, 10);
    }

    #[test]
    fn monoidality_witness_blocks_are_invertible_on_the_fixture() {
        let a = fixture();
        let b = fixture();
        let w = monoidality_witness(&a, &b).expect("isomorphism exists");
        let expected: usize = {
            let ra = a.reduce().unwrap();
            let rb = b.reduce().unwrap();
            ra.space().tensor(rb.space()).total_dim()
        };
        assert_eq!(w.total_dim, expected);
        for (d, m) in &w.blocks {
            assert_eq!(m.rank(), m.rows(), "block in degree {d} is invertible");
            assert_eq!(m.rows(), m.cols());
        }
    }
}
