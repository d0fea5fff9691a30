//! Multiplicative structure on constraint triples: constraint algebras
//! (observables closed, null part an ideal among observables) and
//! constraint Gerstenhaber structures (the same conditions for a graded
//! commutative product together with a degree −1 bracket).
//!
//! Products enter as black-box bilinear maps on ambient basis elements
//! and are extended bilinearly to the stored subspace bases, so any
//! exact model — a truncated polynomial ring, an exterior algebra over
//! a Lie backend — plugs in without the checker knowing its internals.
//! Every verdict carries an exact counterexample when it is negative.

use super::{ConstraintError, ConstraintTriple};
use crate::exactlin::{format_rational, Rational, Subspace};
use crate::graded::{increasing_words, GradedElement, GradedSpace};
use crate::liering::{LieRinehartInstance, LrElement};
use crate::multivec::{schouten, Multivector};
use num::Zero;
use std::collections::BTreeMap;

/// A product on ambient basis elements, `(p, i, q, j) ↦ e_i^{(p)} · e_j^{(q)}`.
pub type BasisOp<'a> = dyn Fn(i64, usize, i64, usize) -> GradedElement + 'a;

/// Bilinear extension of a basis-level product to coordinate vectors.
fn bilinear(
    op: &BasisOp,
    p: i64,
    x: &[Rational],
    q: i64,
    y: &[Rational],
) -> GradedElement {
    let mut out = GradedElement::zero();
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if yj.is_zero() {
                continue;
            }
            let c = xi * yj;
            for (&(d, k), v) in op(p, i, q, j).iter() {
                out.add_to(d, k, v * &c);
            }
        }
    }
    out
}

fn describe(t: &ConstraintTriple, e: &GradedElement, degree: i64) -> String {
    let comp = e.component(t.ambient(), degree);
    let coords: Vec<String> = comp.iter().map(format_rational).collect();
    format!("degree {degree} component ({})", coords.join(", "))
}

/// The first degree where a component of `e` escapes `part`, if any.
fn escapes(
    t: &ConstraintTriple,
    e: &GradedElement,
    part: impl Fn(i64) -> Subspace,
) -> Option<i64> {
    t.degrees()
        .into_iter()
        .find(|&d| !part(d).contains(&e.component(t.ambient(), d)))
}

/// Verdict of [`check_constraint_algebra`], with exact counterexamples.
#[derive(Debug, Clone)]
pub struct ConstraintAlgebraWitness {
    /// `W · W ⊆ W` and `W · N + N · W ⊆ N`.
    pub is_algebra: bool,
    /// Additionally `T · N + N · T ⊆ N`.
    pub is_strong: bool,
    pub products_checked: usize,
    /// Counterexample to the algebra conditions, if any.
    pub failure: Option<String>,
    /// Counterexample to the strong condition, if any.
    pub strong_failure: Option<String>,
}

/// Checks that a bilinear product makes the triple a constraint
/// algebra: the observable part is closed and the null part is an
/// ideal among observables. The strong form asks the null part to be
/// an ideal in the whole ambient algebra.
pub fn check_constraint_algebra(t: &ConstraintTriple, mult: &BasisOp) -> ConstraintAlgebraWitness {
    let mut checked = 0;
    let mut failure = None;
    let mut strong_failure = None;

    let degrees = t.degrees();
    let sweep = |left: &dyn Fn(i64) -> Vec<Vec<Rational>>,
                     right: &dyn Fn(i64) -> Vec<Vec<Rational>>,
                     target: &dyn Fn(i64) -> Subspace,
                     label: &str,
                     out: &mut Option<String>,
                     checked: &mut usize| {
        for &p in &degrees {
            for &q in &degrees {
                for x in left(p) {
                    for y in right(q) {
                        *checked += 1;
                        let product = bilinear(mult, p, &x, q, &y);
                        if let Some(d) = escapes(t, &product, target) {
                            if out.is_none() {
                                *out = Some(format!(
                                    "{label}: product of degree ({p}, {q}) basis vectors \
                                     escapes, {}",
                                    describe(t, &product, d)
                                ));
                            }
                        }
                    }
                }
            }
        }
    };

    let w_basis = |d: i64| t.w_at(d).basis().to_vec();
    let n_basis = |d: i64| t.n_at(d).basis().to_vec();
    let t_basis = |d: i64| Subspace::full(t.ambient().dim(d)).basis().to_vec();
    let w_part = |d: i64| t.w_at(d);
    let n_part = |d: i64| t.n_at(d);

    sweep(&w_basis, &w_basis, &w_part, "W is not closed", &mut failure, &mut checked);
    sweep(&w_basis, &n_basis, &n_part, "N is not a right ideal in W", &mut failure, &mut checked);
    sweep(&n_basis, &w_basis, &n_part, "N is not a left ideal in W", &mut failure, &mut checked);
    sweep(&t_basis, &n_basis, &n_part, "N is not a right ideal in T", &mut strong_failure, &mut checked);
    sweep(&n_basis, &t_basis, &n_part, "N is not a left ideal in T", &mut strong_failure, &mut checked);

    ConstraintAlgebraWitness {
        is_algebra: failure.is_none(),
        is_strong: failure.is_none() && strong_failure.is_none(),
        products_checked: checked,
        failure,
        strong_failure,
    }
}

/// Verdict of [`check_constraint_gerstenhaber`]: one line per inclusion,
/// plus the strong (ambient-absorbing) variant.
#[derive(Debug, Clone)]
pub struct GerstenhaberTripleReport {
    /// `(inclusion, holds)` in the order checked.
    pub inclusions: Vec<(String, bool)>,
    /// All wedge/bracket inclusions among `W` and `N` hold.
    pub is_constraint_gerstenhaber: bool,
    /// Additionally `N ∧ T + T ∧ N ⊆ N`.
    pub is_strong: bool,
    pub cases: usize,
    /// First counterexample, if any inclusion failed.
    pub failure: Option<String>,
}

/// Checks the constraint Gerstenhaber conditions for a graded product
/// and a bracket given on ambient basis elements: both operations close
/// on `W`, both absorb `N` against `W`, and — for the strong verdict —
/// the product absorbs `N` against the full ambient space.
pub fn check_constraint_gerstenhaber(
    t: &ConstraintTriple,
    wedge: &BasisOp,
    bracket: &BasisOp,
) -> GerstenhaberTripleReport {
    let degrees = t.degrees();
    let mut cases = 0;
    let mut failure: Option<String> = None;
    let mut inclusions = Vec::new();

    let mut check = |label: &str,
                     op: &BasisOp,
                     left: &dyn Fn(i64) -> Vec<Vec<Rational>>,
                     right: &dyn Fn(i64) -> Vec<Vec<Rational>>,
                     target: &dyn Fn(i64) -> Subspace| {
        let mut holds = true;
        for &p in &degrees {
            for &q in &degrees {
                for x in left(p) {
                    for y in right(q) {
                        cases += 1;
                        let product = bilinear(op, p, &x, q, &y);
                        if let Some(d) = escapes(t, &product, target) {
                            holds = false;
                            if failure.is_none() {
                                failure = Some(format!(
                                    "{label} fails on degrees ({p}, {q}): {}",
                                    describe(t, &product, d)
                                ));
                            }
                        }
                    }
                }
            }
        }
        inclusions.push((label.to_string(), holds));
        holds
    };

    let w_basis = |d: i64| t.w_at(d).basis().to_vec();
    let n_basis = |d: i64| t.n_at(d).basis().to_vec();
    let t_basis = |d: i64| Subspace::full(t.ambient().dim(d)).basis().to_vec();
    let w_part = |d: i64| t.w_at(d);
    let n_part = |d: i64| t.n_at(d);

    let mut ok = true;
    ok &= check("{W, W} ⊆ W", bracket, &w_basis, &w_basis, &w_part);
    ok &= check("W ∧ W ⊆ W", wedge, &w_basis, &w_basis, &w_part);
    ok &= check("{N, W} ⊆ N", bracket, &n_basis, &w_basis, &n_part);
    ok &= check("{W, N} ⊆ N", bracket, &w_basis, &n_basis, &n_part);
    ok &= check("N ∧ W ⊆ N", wedge, &n_basis, &w_basis, &n_part);
    ok &= check("W ∧ N ⊆ N", wedge, &w_basis, &n_basis, &n_part);
    let mut strong = true;
    strong &= check("N ∧ T ⊆ N", wedge, &n_basis, &t_basis, &n_part);
    strong &= check("T ∧ N ⊆ N", wedge, &t_basis, &n_basis, &n_part);

    GerstenhaberTripleReport {
        inclusions,
        is_constraint_gerstenhaber: ok,
        is_strong: ok && strong,
        cases,
        failure,
    }
}

/// The exterior algebra of a Lie backend, flattened onto a graded
/// space: degree `j` carries the increasing words of length `j`, and
/// the two Gerstenhaber operations are the wedge and the Schouten
/// bracket on multivectors.
pub struct ExteriorModel {
    lr: LieRinehartInstance,
    words: Vec<Vec<Vec<usize>>>,
    index: BTreeMap<(usize, Vec<usize>), usize>,
}

impl ExteriorModel {
    /// Requires a Lie backend (no variables), so all coefficients are
    /// scalars and components are finite-dimensional on the nose.
    pub fn new(lr: &LieRinehartInstance) -> Self {
        assert!(lr.is_lie(), "the exterior model needs a Lie backend");
        let rank = lr.rank();
        let words: Vec<Vec<Vec<usize>>> =
            (0..=rank).map(|j| increasing_words(rank, j)).collect();
        let mut index = BTreeMap::new();
        for (j, level) in words.iter().enumerate() {
            for (i, w) in level.iter().enumerate() {
                index.insert((j, w.clone()), i);
            }
        }
        ExteriorModel { lr: lr.clone(), words, index }
    }

    pub fn lr(&self) -> &LieRinehartInstance {
        &self.lr
    }

    /// Degrees `0ⁿ…rank`, one label per increasing word.
    pub fn space(&self) -> GradedSpace {
        let names = self.lr.basis_names();
        let mut space = GradedSpace::new();
        for (j, level) in self.words.iter().enumerate() {
            let labels = level
                .iter()
                .map(|w| {
                    if w.is_empty() {
                        "1".to_string()
                    } else {
                        w.iter()
                            .map(|&i| names[i].clone())
                            .collect::<Vec<_>>()
                            .join("^")
                    }
                })
                .collect();
            space = space.with_component(j as i64, labels);
        }
        space
    }

    /// The multivector with the given coordinates in degree `j`.
    pub fn multivector(&self, degree: i64, coords: &[Rational]) -> Multivector {
        let j = usize::try_from(degree).expect("exterior degrees are non-negative");
        let mut out = Multivector::zero(0, self.lr.rank());
        for (i, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                let f = crate::liering::PolyScalar::constant(0, c.clone());
                out = out.add(&Multivector::from_word(0, self.lr.rank(), &self.words[j][i], f));
            }
        }
        out
    }

    /// Flat coordinates of a multivector across all degrees.
    pub fn coords(&self, mv: &Multivector) -> GradedElement {
        let mut out = GradedElement::zero();
        for (word, f) in mv.terms() {
            let c = f
                .to_rational()
                .expect("Lie-backend multivectors have scalar coefficients");
            if !c.is_zero() {
                let j = word.len();
                out.add_to(j as i64, self.index[&(j, word.clone())], c);
            }
        }
        out
    }

    /// Wedge of basis words, as a graded element.
    pub fn wedge(&self, p: i64, i: usize, q: i64, j: usize) -> GradedElement {
        let a = self.basis_multivector(p, i);
        let b = self.basis_multivector(q, j);
        self.coords(&a.wedge(&b))
    }

    /// Schouten bracket of basis words, as a graded element.
    pub fn bracket(&self, p: i64, i: usize, q: i64, j: usize) -> GradedElement {
        let a = self.basis_multivector(p, i);
        let b = self.basis_multivector(q, j);
        self.coords(&schouten(&self.lr, &a, &b))
    }

    fn basis_multivector(&self, degree: i64, i: usize) -> Multivector {
        let j = usize::try_from(degree).expect("exterior degrees are non-negative");
        Multivector::from_word(0, self.lr.rank(), &self.words[j][i], crate::liering::PolyScalar::one(0))
    }

    /// The exterior constraint triple generated by spanning sets: the
    /// observable part is spanned by wedges of `w_span`, the null part
    /// by one `n_span` factor wedged with `w_span` factors. Degree 0 is
    /// the ground field with zero null part.
    pub fn lambda_triple(
        &self,
        w_span: &[LrElement],
        n_span: &[LrElement],
    ) -> Result<ConstraintTriple, ConstraintError> {
        let rank = self.lr.rank();
        let to_mv = |e: &LrElement| Multivector::from_element(e, 0);
        let wedge_combo = |gens: &[Multivector], combo: &[usize]| {
            let mut acc = Multivector::scalar(0, rank, crate::liering::PolyScalar::one(0));
            for &g in combo {
                acc = acc.wedge(&gens[g]);
            }
            acc
        };
        let w_gens: Vec<Multivector> = w_span.iter().map(to_mv).collect();
        let n_gens: Vec<Multivector> = n_span.iter().map(to_mv).collect();

        let component = |mv: &Multivector, j: usize| -> Vec<Rational> {
            let mut v = vec![Rational::zero(); self.words[j].len()];
            for (&(d, k), c) in self.coords(mv).iter() {
                if d == j as i64 {
                    v[k] = c.clone();
                }
            }
            v
        };

        let mut w = BTreeMap::new();
        let mut n = BTreeMap::new();
        w.insert(0, Subspace::full(1));
        n.insert(0, Subspace::zero(1));
        for j in 1..=rank {
            let dim_j = self.words[j].len();
            let mut w_vecs = Vec::new();
            for combo in increasing_words(w_gens.len(), j) {
                let mv = wedge_combo(&w_gens, &combo);
                if !mv.is_zero() {
                    w_vecs.push(component(&mv, j));
                }
            }
            let mut n_vecs = Vec::new();
            for n_gen in n_gens.iter() {
                for combo in increasing_words(w_gens.len(), j - 1) {
                    let mv = n_gen.wedge(&wedge_combo(&w_gens, &combo));
                    if !mv.is_zero() {
                        n_vecs.push(component(&mv, j));
                    }
                }
            }
            w.insert(j as i64, Subspace::span(dim_j, &w_vecs));
            n.insert(j as i64, Subspace::span(dim_j, &n_vecs));
        }
        ConstraintTriple::new(self.space(), w, n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rat;

    /// `x^a · x^b` in `Q[x]` truncated at degree `max`: products past
    /// the window are cut to zero.
    fn truncated_mult(max: usize) -> impl Fn(i64, usize, i64, usize) -> GradedElement {
        move |_, a, _, b| {
            let mut e = GradedElement::zero();
            if a + b <= max {
                e.add_to(0, a + b, rat(1, 1));
            }
            e
        }
    }

    fn truncated_triple(
        max: usize,
        w: Subspace,
        n: Subspace,
    ) -> ConstraintTriple {
        let ambient = GradedSpace::concentrated(0, max + 1, "x^");
        let mut ws = BTreeMap::new();
        ws.insert(0, w);
        let mut ns = BTreeMap::new();
        ns.insert(0, n);
        ConstraintTriple::new(ambient, ws, ns).unwrap()
    }

    fn powers(max: usize, range: std::ops::RangeInclusive<usize>) -> Subspace {
        let vecs: Vec<Vec<Rational>> = range
            .map(|i| {
                let mut v = vec![rat(0, 1); max + 1];
                v[i] = rat(1, 1);
                v
            })
            .collect();
        Subspace::span(max + 1, &vecs)
    }

    #[test]
    fn truncated_polynomials_with_the_augmentation_ideal_are_strong() {
        let max = 4;
        let t = truncated_triple(max, Subspace::full(max + 1), powers(max, 1..=max));
        let witness = check_constraint_algebra(&t, &truncated_mult(max));
        assert!(witness.is_algebra, "{:?}", witness.failure);
        assert!(witness.is_strong, "{:?}", witness.strong_failure);
        assert!(witness.products_checked > 0);
    }

    #[test]
    fn closure_failure_is_witnessed_exactly() {
        // span(1, x^2) is not closed: x^2 · x^2 = x^4 stays in the
        // window but leaves the span.
        let max = 4;
        let t = truncated_triple(max, powers(max, 0..=0).sum(&powers(max, 2..=2)), Subspace::zero(max + 1));
        let witness = check_constraint_algebra(&t, &truncated_mult(max));
        assert!(!witness.is_algebra);
        let msg = witness.failure.expect("counterexample recorded");
        assert!(msg.contains("W is not closed"), "{msg}");
    }

    #[test]
    fn null_part_equal_to_the_ideal_part_is_an_ideal() {
        let max = 3;
        let part = powers(max, 1..=max);
        let t = truncated_triple(max, part.clone(), part);
        let witness = check_constraint_algebra(&t, &truncated_mult(max));
        assert!(witness.is_algebra, "{:?}", witness.failure);
        assert!(witness.is_strong, "{:?}", witness.strong_failure);
    }

    fn solvable3() -> LieRinehartInstance {
        let mut brackets = BTreeMap::new();
        brackets.insert((0, 1), vec![rat(0, 1), rat(1, 1), rat(0, 1)]);
        brackets.insert((0, 2), vec![rat(0, 1), rat(0, 1), rat(1, 1)]);
        LieRinehartInstance::lie(
            3,
            vec!["e0".into(), "e1".into(), "e2".into()],
            brackets,
        )
        .unwrap()
    }

    fn basis(i: usize) -> LrElement {
        LrElement::basis(0, 3, i)
    }

    #[test]
    fn exterior_triple_dimensions_on_the_solvable_fixture() {
        let model = ExteriorModel::new(&solvable3());
        let t = model
            .lambda_triple(&[basis(0), basis(1)], &[basis(1)])
            .unwrap();
        let w_dims: Vec<usize> = (0..=3).map(|j| t.w_at(j).dim()).collect();
        let n_dims: Vec<usize> = (0..=3).map(|j| t.n_at(j).dim()).collect();
        assert_eq!(w_dims, vec![1, 2, 1, 0]);
        assert_eq!(n_dims, vec![0, 1, 1, 0]);
    }

    #[test]
    fn solvable_subalgebra_is_constraint_gerstenhaber_but_not_strong() {
        let model = ExteriorModel::new(&solvable3());
        let t = model
            .lambda_triple(&[basis(0), basis(1)], &[basis(1)])
            .unwrap();
        let report = check_constraint_gerstenhaber(
            &t,
            &|p, i, q, j| model.wedge(p, i, q, j),
            &|p, i, q, j| model.bracket(p, i, q, j),
        );
        assert!(report.is_constraint_gerstenhaber, "{:?}", report.failure);
        // e1 ∧ e2 leaves span(e0 ∧ e1): the null part does not absorb
        // ambient factors.
        assert!(!report.is_strong);
        assert_eq!(report.inclusions.len(), 8);
    }

    #[test]
    fn full_observables_with_an_ideal_null_part_are_strong() {
        let model = ExteriorModel::new(&solvable3());
        let t = model
            .lambda_triple(&[basis(0), basis(1), basis(2)], &[basis(1), basis(2)])
            .unwrap();
        let report = check_constraint_gerstenhaber(
            &t,
            &|p, i, q, j| model.wedge(p, i, q, j),
            &|p, i, q, j| model.bracket(p, i, q, j),
        );
        assert!(report.is_constraint_gerstenhaber, "{:?}", report.failure);
        assert!(report.is_strong, "{:?}", report.failure);
    }

    #[test]
    fn non_ideal_null_part_is_caught_with_a_witness() {
        // N = span(e0) inside W = span(e0, e1): {e0, e1} = e1 escapes.
        let model = ExteriorModel::new(&solvable3());
        let t = model
            .lambda_triple(&[basis(0), basis(1)], &[basis(0)])
            .unwrap();
        let report = check_constraint_gerstenhaber(
            &t,
            &|p, i, q, j| model.wedge(p, i, q, j),
            &|p, i, q, j| model.bracket(p, i, q, j),
        );
        assert!(!report.is_constraint_gerstenhaber);
        let msg = report.failure.expect("witness recorded");
        assert!(msg.contains("⊆ N"), "{msg}");
    }

    #[test]
    fn empty_null_part_passes_trivially() {
        let model = ExteriorModel::new(&solvable3());
        let t = model.lambda_triple(&[basis(0), basis(1)], &[]).unwrap();
        let report = check_constraint_gerstenhaber(
            &t,
            &|p, i, q, j| model.wedge(p, i, q, j),
            &|p, i, q, j| model.bracket(p, i, q, j),
        );
        assert!(report.is_constraint_gerstenhaber, "{:?}", report.failure);
        assert!(report.is_strong);
        for j in 0..=3 {
            assert_eq!(t.n_at(j).dim(), 0);
        }
    }
}
