//! The reduced observables: pair spaces over a symmetry datum, their
//! quotient, and the verification that the homotopy brackets descend.

use super::{
    build_b_prime, check_cocycle_condition, ideal_preservation_failure, null_form_failure,
    FieldWindow, FormWindow, ReductionError, SymmetryData, SymmetryModule,
};
use crate::cartan::CeForm;
use crate::exactlin::{kernel_of_images, ExactMatrix, QuotientBasis, Rational, Subspace};
use crate::liering::{LrElement, PolyScalar};
use crate::multivec::Multivector;
use crate::observables::{Cocycle, HamPair};
use num::{One, Zero};
use std::collections::BTreeMap;

/// The window of candidate pairs: a form window of degree `k - 1` followed
/// by a field window, concatenated coordinates.
#[derive(Debug, Clone)]
pub struct PairWindow {
    form: FormWindow,
    field: FieldWindow,
}

impl PairWindow {
    pub(super) fn new(sym: &SymmetryData, k: usize, bound: u32) -> Self {
        PairWindow {
            form: FormWindow::new(sym, k - 1, bound),
            field: FieldWindow::new(sym, bound),
        }
    }

    pub fn form(&self) -> &FormWindow {
        &self.form
    }

    pub fn field(&self) -> &FieldWindow {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.form.dim() + self.field.dim()
    }

    pub fn coords(&self, alpha: &CeForm, field: &LrElement) -> Option<Vec<Rational>> {
        let mut out = self.form.coords(alpha)?;
        out.extend(self.field.coords(field)?);
        Some(out)
    }

    pub fn decode(&self, coords: &[Rational]) -> (CeForm, LrElement) {
        let (form_part, field_part) = coords.split_at(self.form.dim());
        (self.form.decode(form_part), self.field.decode(field_part))
    }
}

/// Row labels of the pair-space linear systems.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum RowKey {
    /// A coordinate of `i_X omega + d alpha`, which must vanish entirely.
    Ham(Vec<usize>, Vec<u32>),
    /// A non-ideal coordinate of `X(generator)`.
    Preserve(usize, Vec<u32>),
    /// A non-null coordinate of `alpha` itself (denominator only).
    Alpha(Vec<usize>, Vec<u32>),
    /// A non-null coordinate of the contraction of `alpha` along a
    /// symmetry.
    Iota(usize, Vec<usize>, Vec<u32>),
    /// A non-null coordinate of the Lie derivative of `alpha` along a
    /// symmetry.
    Lie(usize, Vec<usize>, Vec<u32>),
}

/// Inserts the coordinates of `value` that are not null: word free of
/// ideal generators and coefficient monomial outside the ideal.
fn insert_non_null(
    sym: &SymmetryData,
    image: &mut BTreeMap<RowKey, Rational>,
    key: impl Fn(Vec<usize>, Vec<u32>) -> RowKey,
    value: &CeForm,
) {
    let gens: Vec<usize> = sym.ideal().generator_indices().collect();
    for ((word, exps), c) in value.coordinates() {
        if word.iter().any(|w| gens.contains(w)) {
            continue;
        }
        let mono = PolyScalar::monomial(sym.vars(), exps.clone(), Rational::one());
        if !sym.ideal().contains(&mono) {
            image.insert(key(word, exps), c);
        }
    }
}

/// The numerator pair space inside the window: the pair equation holds,
/// the field preserves the ideal and normalizes the symmetry module, and
/// the form's contractions (and, unless suppressed, Lie derivatives)
/// along every symmetry are null.
pub(super) fn numerator_subspace(
    sym: &SymmetryData,
    omega: &CeForm,
    pair: &PairWindow,
    module: &SymmetryModule,
    include_lie: bool,
) -> Subspace {
    let mut images = Vec::with_capacity(pair.dim());
    for b in 0..pair.dim() {
        let mut image: BTreeMap<RowKey, Rational> = BTreeMap::new();
        if b < pair.form.dim() {
            let alpha = pair.form.basis_form(b);
            for ((word, exps), c) in alpha.dce(sym.lr()).coordinates() {
                image.insert(RowKey::Ham(word, exps), c);
            }
            for (i, xi) in sym.symmetries().iter().enumerate() {
                let mv = Multivector::from_element(xi, sym.vars());
                insert_non_null(sym, &mut image, |w, e| RowKey::Iota(i, w, e), &alpha.contract(&mv));
                if include_lie {
                    insert_non_null(
                        sym,
                        &mut image,
                        |w, e| RowKey::Lie(i, w, e),
                        &alpha.lie_derivative(sym.lr(), &mv),
                    );
                }
            }
        } else {
            let x = pair.field.basis_element(b - pair.form.dim());
            let mv = Multivector::from_element(&x, sym.vars());
            for ((word, exps), c) in omega.contract(&mv).coordinates() {
                image.insert(RowKey::Ham(word, exps), c);
            }
            for g in sym.ideal().generator_indices() {
                let moved = sym.lr().anchor_of(&x, &PolyScalar::var(sym.vars(), g));
                for (exps, c) in moved.terms() {
                    let mono = PolyScalar::monomial(sym.vars(), exps.clone(), Rational::one());
                    if !sym.ideal().contains(&mono) {
                        image.insert(RowKey::Preserve(g, exps.clone()), c.clone());
                    }
                }
            }
        }
        images.push(image);
    }
    let mut space = kernel_of_images(&images);

    let big = FieldWindow::new(sym, pair.field.bound() + sym.symmetry_degree());
    let target = module.slice(sym, &big);
    for xi in sym.symmetries() {
        let mut m = ExactMatrix::zero(big.dim(), pair.dim());
        for b in pair.form.dim()..pair.dim() {
            let bracket = sym
                .lr()
                .bracket(xi, &pair.field.basis_element(b - pair.form.dim()));
            let coords = big
                .coords(&bracket)
                .expect("brackets with symmetries fit the enlarged window");
            for (r, c) in coords.into_iter().enumerate() {
                if !c.is_zero() {
                    m.set(r, b, c);
                }
            }
        }
        space = space.intersect(&Subspace::preimage(&m, &target));
    }
    space
}

/// The denominator pair space inside the window: the pair equation holds,
/// the form is null, and the field belongs to the symmetry module.
pub(super) fn denominator_subspace(
    sym: &SymmetryData,
    omega: &CeForm,
    pair: &PairWindow,
    module: &SymmetryModule,
) -> Subspace {
    let mut images = Vec::with_capacity(pair.dim());
    for b in 0..pair.dim() {
        let mut image: BTreeMap<RowKey, Rational> = BTreeMap::new();
        if b < pair.form.dim() {
            let alpha = pair.form.basis_form(b);
            for ((word, exps), c) in alpha.dce(sym.lr()).coordinates() {
                image.insert(RowKey::Ham(word, exps), c);
            }
            insert_non_null(sym, &mut image, RowKey::Alpha, &alpha);
        } else {
            let x = pair.field.basis_element(b - pair.form.dim());
            let mv = Multivector::from_element(&x, sym.vars());
            for ((word, exps), c) in omega.contract(&mv).coordinates() {
                image.insert(RowKey::Ham(word, exps), c);
            }
        }
        images.push(image);
    }
    let space = kernel_of_images(&images);

    let target = module.slice(sym, &pair.field);
    let mut projection = ExactMatrix::zero(pair.field.dim(), pair.dim());
    for b in 0..pair.field.dim() {
        projection.set(b, pair.form.dim() + b, Rational::one());
    }
    space.intersect(&Subspace::preimage(&projection, &target))
}

/// Window-free membership test for the numerator conditions; `Err` carries
/// a witness. Used on bracket outputs, which may leave the window.
fn pair_in_numerator_set(
    sym: &SymmetryData,
    check_module: &SymmetryModule,
    omega: &CeForm,
    alpha: &CeForm,
    field: &LrElement,
) -> Result<(), String> {
    let mv = Multivector::from_element(field, sym.vars());
    let residual = omega.contract(&mv).add(&alpha.dce(sym.lr()));
    if !residual.is_zero() {
        return Err(format!(
            "the pair equation fails with residual {}",
            residual.format_with(sym.lr().basis_names(), sym.lr().var_names())
        ));
    }
    if let Some(witness) = ideal_preservation_failure(sym, field) {
        return Err(witness);
    }
    for (i, xi) in sym.symmetries().iter().enumerate() {
        let xim = Multivector::from_element(xi, sym.vars());
        if let Some(witness) = null_form_failure(sym, &alpha.contract(&xim)) {
            return Err(format!("contraction along symmetry {i} is not null: {witness}"));
        }
        if let Some(witness) = null_form_failure(sym, &alpha.lie_derivative(sym.lr(), &xim)) {
            return Err(format!(
                "Lie derivative along symmetry {i} is not null: {witness}"
            ));
        }
        if !check_module.contains(sym, &sym.lr().bracket(xi, field)) {
            return Err(format!(
                "the bracket with symmetry {i} leaves the symmetry module at multiplier bound {}",
                check_module.multiplier_bound()
            ));
        }
    }
    Ok(())
}

/// Window-free membership test for the denominator conditions.
fn pair_in_denominator_set(
    sym: &SymmetryData,
    check_module: &SymmetryModule,
    omega: &CeForm,
    alpha: &CeForm,
    field: &LrElement,
) -> Result<(), String> {
    let mv = Multivector::from_element(field, sym.vars());
    let residual = omega.contract(&mv).add(&alpha.dce(sym.lr()));
    if !residual.is_zero() {
        return Err(format!(
            "the pair equation fails with residual {}",
            residual.format_with(sym.lr().basis_names(), sym.lr().var_names())
        ));
    }
    if let Some(witness) = null_form_failure(sym, alpha) {
        return Err(format!("the form part is not null: {witness}"));
    }
    if !check_module.contains(sym, field) {
        return Err(format!(
            "the field part leaves the symmetry module at multiplier bound {}",
            check_module.multiplier_bound()
        ));
    }
    Ok(())
}

/// Window-free membership test for the interior numerator at any degree:
/// contraction and Lie derivative along every symmetry are null.
fn form_in_reducible_set(sym: &SymmetryData, alpha: &CeForm) -> Result<(), String> {
    for (i, xi) in sym.symmetries().iter().enumerate() {
        let mv = Multivector::from_element(xi, sym.vars());
        if let Some(witness) = null_form_failure(sym, &alpha.contract(&mv)) {
            return Err(format!("contraction along symmetry {i} is not null: {witness}"));
        }
        if let Some(witness) = null_form_failure(sym, &alpha.lie_derivative(sym.lr(), &mv)) {
            return Err(format!(
                "Lie derivative along symmetry {i} is not null: {witness}"
            ));
        }
    }
    Ok(())
}

/// One interior degree of the reduced complex: reducible forms over null
/// forms.
#[derive(Debug, Clone)]
pub struct InteriorLevel {
    pub degree: usize,
    pub numerator: Subspace,
    pub denominator: Subspace,
    pub quotient: QuotientBasis,
}

/// Counts of the verified bracket well-definedness cases.
#[derive(Debug, Clone, Default)]
pub struct BracketReport {
    /// Differentials of interior representatives landing in the next
    /// numerator, and of interior null forms landing in the next
    /// denominator.
    pub l1_cases: usize,
    /// Binary brackets of class representatives landing in the numerator.
    pub l2_cases: usize,
    /// Higher contractions of class tuples landing in the interior
    /// numerators.
    pub higher_cases: usize,
    /// Binary brackets of a denominator element with a class
    /// representative landing in the denominator.
    pub perturbation_cases: usize,
}

/// The reduced observables of a symmetry datum at a window bound.
#[derive(Debug, Clone)]
pub struct ReducedObservables {
    pub k: usize,
    pub bound: u32,
    pub multiplier_bound: u32,
    pub window: PairWindow,
    pub numerator: Subspace,
    pub denominator: Subspace,
    pub quotient: QuotientBasis,
    /// Decoded representatives of the quotient classes, re-validated as
    /// genuine pairs.
    pub classes: Vec<(CeForm, LrElement)>,
    /// Reduced interior degrees `0 .. k - 1`.
    pub interior: Vec<InteriorLevel>,
    /// Whether quantifying the reducibility conditions over a basis of
    /// the windowed symmetry module, instead of over the chosen
    /// generators, accepts the same numerator.
    pub quantifier_variants_agree: bool,
    pub brackets: BracketReport,
}

/// Non-decreasing index tuples of length `len` over `0..n`.
fn tuples_with_repetition(n: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(n: usize, len: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == len {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            current.push(i);
            rec(n, len, i, current, out);
            current.pop();
        }
    }
    rec(n, len, 0, &mut current, &mut out);
    out
}

/// Computes the reduced observables: numerator and denominator pair
/// spaces over the window, their quotient with decoded class
/// representatives, the interior levels, and the full set of descent
/// checks for the homotopy brackets. Every failed check is an error with
/// an exact witness; the computation never silently weakens a condition.
pub fn reduced_observables(
    sym: &SymmetryData,
    omega: &CeForm,
    k: usize,
    bound: u32,
    multiplier_bound: u32,
) -> Result<ReducedObservables, ReductionError> {
    let cocycle = Cocycle::new(sym.lr(), omega.clone(), k)?;
    check_cocycle_condition(sym, omega)?;

    let pair = PairWindow::new(sym, k, bound);
    let den_module = SymmetryModule::new(sym, multiplier_bound)?;
    let num_module = SymmetryModule::new(
        sym,
        2 * multiplier_bound + sym.symmetry_degree() + 1,
    )?;
    let numerator = numerator_subspace(sym, omega, &pair, &num_module, true);
    let denominator = denominator_subspace(sym, omega, &pair, &den_module);
    let quotient = QuotientBasis::new(&denominator, &numerator).map_err(|e| {
        ReductionError::Containment(format!(
            "the denominator leaves the numerator at window bound {bound}, \
             multiplier bound {multiplier_bound}: {e}"
        ))
    })?;

    let mut classes = Vec::new();
    for rep in quotient.representatives() {
        let (alpha, field) = pair.decode(rep);
        HamPair::new(sym.lr(), &cocycle, alpha.clone(), field.clone())?;
        classes.push((alpha, field));
    }

    let mut interior = Vec::new();
    for degree in 0..k.saturating_sub(1) {
        let level = build_b_prime(sym, degree, bound)?;
        let level_quotient = QuotientBasis::new(&level.null, &level.reducible).map_err(|e| {
            ReductionError::Containment(format!(
                "null forms leave the reducible forms at degree {degree}: {e}"
            ))
        })?;
        interior.push(InteriorLevel {
            degree,
            numerator: level.reducible,
            denominator: level.null,
            quotient: level_quotient,
        });
    }

    // Re-test the reducibility conditions against a basis of the windowed
    // symmetry module instead of the chosen generators. The module-basis
    // conditions imply the generator conditions (the generators belong to
    // the module), so agreement means exactly that every numerator
    // representative passes the stronger test.
    let check_module = SymmetryModule::new(
        sym,
        2 * (bound + multiplier_bound) + 2 * sym.symmetry_degree() + 1,
    )?;
    let module_fields: Vec<LrElement> = den_module
        .slice(sym, &pair.field)
        .basis()
        .iter()
        .map(|v| pair.field.decode(v))
        .collect();
    let mut quantifier_variants_agree = true;
    'variants: for rep in numerator.basis() {
        let (alpha, field) = pair.decode(rep);
        for xi in &module_fields {
            let mv = Multivector::from_element(xi, sym.vars());
            if null_form_failure(sym, &alpha.contract(&mv)).is_some()
                || null_form_failure(sym, &alpha.lie_derivative(sym.lr(), &mv)).is_some()
                || !check_module.contains(sym, &sym.lr().bracket(xi, &field))
            {
                quantifier_variants_agree = false;
                break 'variants;
            }
        }
    }

    let mut brackets = BracketReport::default();

    // Differentials: interior numerators map into the next numerator and
    // interior null forms into the next denominator; the top interior
    // level maps into the pair spaces with zero field part.
    for level in &interior {
        let next_is_pairs = level.degree + 1 == k - 1;
        for rep in level.numerator.basis() {
            let alpha = FormWindow::new(sym, level.degree, bound).decode(rep);
            let d_alpha = alpha.dce(sym.lr());
            let outcome = if next_is_pairs {
                pair_in_numerator_set(
                    sym,
                    &check_module,
                    omega,
                    &d_alpha,
                    &LrElement::zero(sym.vars(), sym.rank()),
                )
            } else {
                form_in_reducible_set(sym, &d_alpha)
            };
            outcome.map_err(|witness| {
                ReductionError::Bracket(format!(
                    "the differential of an interior representative at degree {} \
                     leaves the next numerator: {witness}",
                    level.degree
                ))
            })?;
            brackets.l1_cases += 1;
        }
        for rep in level.denominator.basis() {
            let alpha = FormWindow::new(sym, level.degree, bound).decode(rep);
            let d_alpha = alpha.dce(sym.lr());
            let outcome = if next_is_pairs {
                pair_in_denominator_set(
                    sym,
                    &check_module,
                    omega,
                    &d_alpha,
                    &LrElement::zero(sym.vars(), sym.rank()),
                )
            } else {
                null_form_failure(sym, &d_alpha)
                    .map_or(Ok(()), |witness| Err(format!("not null: {witness}")))
            };
            outcome.map_err(|witness| {
                ReductionError::Bracket(format!(
                    "the differential of a null form at degree {} leaves the next \
                     denominator: {witness}",
                    level.degree
                ))
            })?;
            brackets.l1_cases += 1;
        }
    }

    // Binary bracket on classes.
    for (p, (_, x1)) in classes.iter().enumerate() {
        for (_q, (_, x2)) in classes.iter().enumerate().skip(p) {
            let mv = Multivector::from_element(x1, sym.vars())
                .wedge(&Multivector::from_element(x2, sym.vars()));
            let form_part = omega.contract(&mv).neg();
            let field_part = sym.lr().bracket(x1, x2);
            pair_in_numerator_set(sym, &check_module, omega, &form_part, &field_part).map_err(
                |witness| {
                    ReductionError::Bracket(format!(
                        "the binary bracket of two classes leaves the numerator: {witness}"
                    ))
                },
            )?;
            brackets.l2_cases += 1;
        }
    }

    // Perturbing one argument by a denominator element moves the binary
    // bracket by a denominator element, so the bracket descends.
    for den_rep in denominator.basis() {
        let (_, y) = pair.decode(den_rep);
        for (_, x) in &classes {
            let mv = Multivector::from_element(&y, sym.vars())
                .wedge(&Multivector::from_element(x, sym.vars()));
            let form_part = omega.contract(&mv).neg();
            let field_part = sym.lr().bracket(&y, x);
            pair_in_denominator_set(sym, &check_module, omega, &form_part, &field_part).map_err(
                |witness| {
                    ReductionError::Bracket(format!(
                        "the bracket of a denominator element with a class leaves the \
                         denominator: {witness}"
                    ))
                },
            )?;
            brackets.perturbation_cases += 1;
        }
    }

    // Higher brackets on class tuples: the sign-adjusted contraction of
    // the structure form lands in the interior numerator of the matching
    // degree.
    for j in 3..=(k + 1) {
        for tuple in tuples_with_repetition(classes.len(), j) {
            let mut mv = Multivector::from_element(&classes[tuple[0]].1, sym.vars());
            for &t in &tuple[1..] {
                mv = mv.wedge(&Multivector::from_element(&classes[t].1, sym.vars()));
            }
            let mut value = omega.contract(&mv);
            if j % 2 == 0 {
                value = value.neg();
            }
            form_in_reducible_set(sym, &value).map_err(|witness| {
                ReductionError::Bracket(format!(
                    "the {j}-ary bracket of classes leaves the interior numerator: {witness}"
                ))
            })?;
            brackets.higher_cases += 1;
        }
    }

    Ok(ReducedObservables {
        k,
        bound,
        multiplier_bound,
        window: pair,
        numerator,
        denominator,
        quotient,
        classes,
        interior,
        quantifier_variants_agree,
        brackets,
    })
}

/// Outcome of the covariant-momentum comparison.
#[derive(Debug, Clone)]
pub struct ShortcutReport {
    pub bound: u32,
    pub multiplier_bound: u32,
    /// Number of verified momentum forms, one per symmetry.
    pub momenta: usize,
    /// Whether dropping the Lie-derivative conditions leaves the
    /// numerator unchanged.
    pub agrees: bool,
}

/// When every symmetry has a null momentum form (its contraction with the
/// structure form is exactly the negated differential of the momentum),
/// the Lie-derivative half of the reducibility conditions is implied by
/// the contraction half. This verifies the momenta and compares the two
/// numerators exactly over the window.
pub fn covariant_momentum_shortcut(
    sym: &SymmetryData,
    omega: &CeForm,
    k: usize,
    bound: u32,
    multiplier_bound: u32,
    momenta: &[CeForm],
) -> Result<ShortcutReport, ReductionError> {
    let _ = Cocycle::new(sym.lr(), omega.clone(), k)?;
    check_cocycle_condition(sym, omega)?;
    if momenta.len() != sym.symmetries().len() {
        return Err(ReductionError::Containment(format!(
            "{} momentum forms supplied for {} symmetries",
            momenta.len(),
            sym.symmetries().len()
        )));
    }
    for (i, (xi, mu)) in sym.symmetries().iter().zip(momenta).enumerate() {
        let mv = Multivector::from_element(xi, sym.vars());
        let residual = omega.contract(&mv).add(&mu.dce(sym.lr()));
        if !residual.is_zero() {
            return Err(ReductionError::Containment(format!(
                "momentum {i} does not integrate the contraction: residual {}",
                residual.format_with(sym.lr().basis_names(), sym.lr().var_names())
            )));
        }
        if let Some(witness) = null_form_failure(sym, mu) {
            return Err(ReductionError::NullCondition {
                witness: format!("momentum {i} is not null: {witness}"),
            });
        }
    }

    let pair = PairWindow::new(sym, k, bound);
    let num_module = SymmetryModule::new(
        sym,
        2 * multiplier_bound + sym.symmetry_degree() + 1,
    )?;
    let full = numerator_subspace(sym, omega, &pair, &num_module, true);
    let short = numerator_subspace(sym, omega, &pair, &num_module, false);
    Ok(ShortcutReport {
        bound,
        multiplier_bound,
        momenta: momenta.len(),
        agrees: full == short,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduction::coordinate_fields;
    use crate::exactlin::rat;
    use crate::liering::CoordinateIdeal;
    use crate::liering::LieRinehartInstance;
    use crate::observables::ham_pairs;

    #[test]
    fn heisenberg_reduction_has_a_single_class() {
        let mut table = BTreeMap::new();
        table.insert((0, 1), vec![rat(0, 1), rat(0, 1), rat(1, 1)]);
        let lr = LieRinehartInstance::lie(
            3,
            vec!["e0".into(), "e1".into(), "e2".into()],
            table,
        )
        .expect("the Heisenberg algebra validates");
        let omega = CeForm::from_word(0, 3, &[0, 2], PolyScalar::one(0));
        let sym = SymmetryData::new(
            &lr,
            CoordinateIdeal::new(0, []),
            vec![LrElement::basis(0, 3, 1)],
        )
        .expect("the central symmetry preserves the zero ideal");

        let reduced = reduced_observables(&sym, &omega, 1, 0, 0).expect("the datum reduces");
        assert_eq!(reduced.numerator.dim(), 2);
        assert_eq!(reduced.denominator.dim(), 1);
        assert_eq!(reduced.quotient.dim(), 1);
        assert_eq!(reduced.classes.len(), 1);
        assert!(reduced.interior.is_empty());
        assert!(reduced.quantifier_variants_agree);

        // The surviving class is a pure constant with zero field part.
        let (alpha, field) = &reduced.classes[0];
        assert!(field.is_zero());
        assert_eq!(*alpha, CeForm::scalar(0, 3, PolyScalar::one(0)));
    }

    #[test]
    fn trivial_symmetry_data_recovers_the_unreduced_pairs() {
        let lr = coordinate_fields(&["x", "y", "z"]);
        let sym = SymmetryData::new(&lr, CoordinateIdeal::new(3, []), Vec::new())
            .expect("no symmetries to validate");
        let omega = CeForm::from_word(3, 3, &[0, 1, 2], PolyScalar::one(3));

        let reduced = reduced_observables(&sym, &omega, 2, 1, 1).expect("the datum reduces");
        assert_eq!(reduced.denominator.dim(), 0);

        let cocycle = Cocycle::new(&lr, omega, 2).expect("the volume form is closed");
        let unreduced = ham_pairs(&lr, &cocycle, Some(1)).expect("the pair space is solvable");
        assert_eq!(reduced.quotient.dim(), unreduced.len());
        assert_eq!(reduced.numerator.dim(), unreduced.len());

        // One interior level (degree 0), with nothing quotiented away.
        assert_eq!(reduced.interior.len(), 1);
        assert_eq!(reduced.interior[0].denominator.dim(), 0);
        assert_eq!(reduced.interior[0].quotient.dim(), 4);
        assert!(reduced.quantifier_variants_agree);
        assert!(reduced.brackets.l2_cases > 0);
    }

    #[test]
    fn covariant_momenta_suppress_the_lie_conditions() {
        let lr = coordinate_fields(&["t", "x1", "x2", "y1", "y2"]);
        let sym = SymmetryData::new(
            &lr,
            CoordinateIdeal::new(5, [3]),
            vec![LrElement::basis(5, 5, 1)],
        )
        .expect("the fixture validates");
        let omega = CeForm::from_word(5, 5, &[0, 1, 3], PolyScalar::one(5))
            .add(&CeForm::from_word(5, 5, &[0, 2, 4], PolyScalar::one(5)));
        // i_{d/dx1} omega = -dt^dy1 = -d(-y1 dt).
        let momentum = CeForm::from_word(
            5,
            5,
            &[0],
            PolyScalar::monomial(5, vec![0, 0, 0, 1, 0], -Rational::one()),
        );
        let report = covariant_momentum_shortcut(&sym, &omega, 2, 1, 2, &[momentum])
            .expect("the momentum verifies");
        assert_eq!(report.momenta, 1);
        assert!(report.agrees);
    }
}
