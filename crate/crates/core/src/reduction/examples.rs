//! Worked symmetry data sets with independently derived expected values:
//! the five-coordinate residue fixture with its non-surjective pushdown,
//! the planar symplectic fixture with momentum, and the flat
//! constraint-manifold family with combinatorial dimension counts.

use super::observables::{denominator_subspace, numerator_subspace, PairWindow};
use super::{
    build_b_prime, build_y, check_cocycle_condition, covariant_momentum_shortcut,
    reduced_observables, ReductionError, SymmetryData, SymmetryModule,
};
use crate::cartan::CeForm;
use crate::exactlin::{rat, ExactMatrix, QuotientBasis, Rational, Subspace};
use crate::liering::{CoordinateIdeal, LieRinehartInstance, LrElement, PolyScalar};
use crate::multivec::Multivector;
use crate::observables::{Cocycle, HamPair};
use num::{One, Zero};
use std::collections::BTreeMap;

/// Coordinate vector fields on polynomial n-space: identity anchor, zero
/// brackets, one variable per field direction.
pub fn coordinate_fields(names: &[&str]) -> LieRinehartInstance {
    let n = names.len();
    let mut anchor = Vec::new();
    for i in 0..n {
        let mut row = vec![PolyScalar::zero(n); n];
        row[i] = PolyScalar::one(n);
        anchor.push(row);
    }
    LieRinehartInstance::poly(
        n,
        n,
        names.iter().map(|s| s.to_string()).collect(),
        names.iter().map(|s| format!("d/d{s}")).collect(),
        anchor,
        BTreeMap::new(),
    )
    .expect("coordinate fields validate")
}

/// Five coordinates t, x1, x2, y1, y2 with the constraint ideal `(y1)`,
/// the translation symmetry `d/dx1`, and the adapted structure form
/// `dt^dx1^dy1 + dt^dx2^dy2`.
pub fn r5_residue_data() -> (SymmetryData, CeForm) {
    let lr = coordinate_fields(&["t", "x1", "x2", "y1", "y2"]);
    let sym = SymmetryData::new(
        &lr,
        CoordinateIdeal::new(5, [3]),
        vec![LrElement::basis(5, 5, 1)],
    )
    .expect("the translation preserves the ideal");
    let omega = CeForm::from_word(5, 5, &[0, 1, 3], PolyScalar::one(5))
        .add(&CeForm::from_word(5, 5, &[0, 2, 4], PolyScalar::one(5)));
    (sym, omega)
}

/// The plane with the area form `dx^dy`, the constraint ideal `(y)`, the
/// translation symmetry `d/dx`, and its null momentum `-y`.
pub fn symplectic_data() -> (SymmetryData, CeForm, CeForm) {
    let lr = coordinate_fields(&["x", "y"]);
    let sym = SymmetryData::new(
        &lr,
        CoordinateIdeal::new(2, [1]),
        vec![LrElement::basis(2, 2, 0)],
    )
    .expect("the translation preserves the ideal");
    let omega = CeForm::from_word(2, 2, &[0, 1], PolyScalar::one(2));
    let momentum = CeForm::scalar(
        2,
        2,
        PolyScalar::monomial(2, vec![0, 1], -Rational::one()),
    );
    (sym, omega, momentum)
}

/// A flat constraint manifold: `normal` constrained coordinates spanning
/// the ideal, `foliation` coordinates whose translations are the
/// symmetries, and `transverse` coordinates surviving the reduction.
pub fn manifold_data(normal: usize, foliation: usize, transverse: usize) -> SymmetryData {
    let vars = normal + foliation + transverse;
    let mut names = Vec::new();
    for i in 0..normal {
        names.push(format!("n{}", i + 1));
    }
    for i in 0..foliation {
        names.push(format!("u{}", i + 1));
    }
    for i in 0..transverse {
        names.push(format!("v{}", i + 1));
    }
    let name_refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let lr = coordinate_fields(&name_refs);
    let symmetries = (normal..normal + foliation)
        .map(|i| LrElement::basis(vars, vars, i))
        .collect();
    SymmetryData::new(&lr, CoordinateIdeal::new(vars, 0..normal), symmetries)
        .expect("coordinate translations preserve a coordinate ideal")
}

/// Certificate that the rotation downstairs has no pair upstairs at any
/// coefficient degree.
#[derive(Debug, Clone)]
pub struct LiftObstruction {
    /// The coefficient the pair equation would have to cancel; it is
    /// nonzero for the naive lift, and no admissible correction touches
    /// it.
    pub obstructed_coefficient: Rational,
    /// Number of verified structural facts covering every correction
    /// shape.
    pub verified_shapes: usize,
}

/// Outcome of the residue-fixture analysis.
#[derive(Debug, Clone)]
pub struct ResidueDefectReport {
    pub bound: u32,
    pub multiplier_bound: u32,
    pub upstairs_numerator: usize,
    pub upstairs_denominator: usize,
    /// Dimension of the full pair space on the reduced coordinates.
    pub downstairs_pairs: usize,
    /// Dimension of the image of the pushdown.
    pub image_dimension: usize,
    /// The boost pair downstairs is hit by the pushdown.
    pub boost_lifts: bool,
    /// The rotation pair downstairs is not hit at this bound.
    pub rotation_obstructed: bool,
    /// Pairing the boost's potential with the rotation field fails the
    /// pair equation.
    pub mispairing_rejected: bool,
    /// The bound-independent lift obstruction for the rotation.
    pub obstruction: LiftObstruction,
}

/// The reduced coordinates of the residue fixture: everything except the
/// symmetry direction x1 and the constrained direction y1.
const KEPT: [usize; 3] = [0, 2, 4];

/// The linear pushdown from upstairs pairs to downstairs pairs: terms
/// along the symmetry or constrained directions are dropped, as are
/// coefficients involving their variables; surviving indices are
/// renumbered.
fn pushdown_matrix(up: &PairWindow, down: &PairWindow) -> ExactMatrix {
    let mut p = ExactMatrix::zero(down.dim(), up.dim());
    let project = |mono: &Vec<u32>| -> Option<Vec<u32>> {
        if mono[1] == 0 && mono[3] == 0 {
            Some(vec![mono[0], mono[2], mono[4]])
        } else {
            None
        }
    };
    for (w, word) in up.form().words.iter().enumerate() {
        let down_word: Option<Vec<usize>> = word
            .iter()
            .map(|i| KEPT.iter().position(|k| k == i))
            .collect();
        let Some(down_word) = down_word else { continue };
        for (m, mono) in up.form().monos.iter().enumerate() {
            let Some(down_mono) = project(mono) else { continue };
            let row = down.form().word_index[&down_word] * down.form().monos.len()
                + down.form().mono_index[&down_mono];
            p.set(row, w * up.form().monos.len() + m, Rational::one());
        }
    }
    for i in 0..5 {
        let Some(di) = KEPT.iter().position(|k| *k == i) else {
            continue;
        };
        for (m, mono) in up.field().monos.iter().enumerate() {
            let Some(down_mono) = project(mono) else { continue };
            let row = down.form().dim()
                + di * down.field().monos.len()
                + down.field().index[&down_mono];
            p.set(
                row,
                up.form().dim() + i * up.field().monos.len() + m,
                Rational::one(),
            );
        }
    }
    p
}

/// Proves that no upstairs pair pushes down to the rotation, at any
/// coefficient degree. The pair equation forces `d` of the contraction to
/// vanish; for the naive lift that 3-form has a nonzero coefficient at a
/// fixed key, and the four shapes of corrections invisible to the
/// pushdown (multiples of the dropped directions, and multiples of the
/// dropped variables along the kept directions) all leave that
/// coefficient untouched, by word-support facts checked here exactly.
fn rotation_obstruction_certificate(
    sym: &SymmetryData,
    omega: &CeForm,
) -> Result<LiftObstruction, ReductionError> {
    let fail = |msg: &str| ReductionError::Containment(format!("obstruction certificate: {msg}"));
    let target_key = (vec![1usize, 2, 3], vec![0u32; 5]);
    let naive_lift = LrElement::single(5, 5, 0, PolyScalar::var(5, 2))
        .sub(&LrElement::single(5, 5, 2, PolyScalar::var(5, 0)));
    let mv = Multivector::from_element(&naive_lift, sym.vars());
    let forced = omega.contract(&mv).dce(sym.lr()).neg();
    let obstructed_coefficient = forced
        .coordinates()
        .get(&target_key)
        .cloned()
        .unwrap_or_else(Rational::zero);
    if obstructed_coefficient.is_zero() {
        return Err(fail("the naive lift is unobstructed at the chosen key"));
    }

    let mut verified_shapes = 0;
    let contractions: Vec<CeForm> = (0..5)
        .map(|i| omega.contract(&Multivector::from_element(&LrElement::basis(5, 5, i), 5)))
        .collect();
    // The structure form has constant coefficients, so corrections only
    // move the key through the derivative of their own coefficient.
    for beta in &contractions {
        if !beta.dce(sym.lr()).is_zero() {
            return Err(fail("a basis contraction is not closed"));
        }
        verified_shapes += 1;
    }
    // Corrections along the dropped directions: every word of their
    // contraction involves the time index, which the key avoids.
    for i in [1usize, 3] {
        for (word, _) in contractions[i].terms() {
            if !word.contains(&0) {
                return Err(fail("a dropped-direction contraction misses the time index"));
            }
        }
        verified_shapes += 1;
    }
    // Corrections with a constrained-variable coefficient contribute the
    // key only through the word pair [1, 2], which never occurs.
    for beta in &contractions {
        if !beta.coeff(&[1, 2]).is_zero() {
            return Err(fail("a contraction hits the word [1, 2]"));
        }
        verified_shapes += 1;
    }
    // Corrections with a symmetry-variable coefficient along the kept
    // directions contribute only through the word pair [2, 3], which
    // never occurs along those directions.
    for i in KEPT {
        if !contractions[i].coeff(&[2, 3]).is_zero() {
            return Err(fail("a kept-direction contraction hits the word [2, 3]"));
        }
        verified_shapes += 1;
    }
    Ok(LiftObstruction {
        obstructed_coefficient,
        verified_shapes,
    })
}

/// Analyzes the residue fixture: the pushdown to the reduced coordinates
/// kills exactly the denominator (injectivity of the induced map), hits
/// the boost pair, and misses the rotation pair, whose lift is obstructed
/// at every degree by an explicit certificate.
pub fn residue_defect_check(
    bound: u32,
    multiplier_bound: u32,
) -> Result<ResidueDefectReport, ReductionError> {
    let (sym, omega) = r5_residue_data();
    check_cocycle_condition(&sym, &omega)?;
    let pair_up = PairWindow::new(&sym, 2, bound);
    let num_module =
        SymmetryModule::new(&sym, 2 * multiplier_bound + sym.symmetry_degree() + 1)?;
    let den_module = SymmetryModule::new(&sym, multiplier_bound)?;
    let num_up = numerator_subspace(&sym, &omega, &pair_up, &num_module, true);
    let den_up = denominator_subspace(&sym, &omega, &pair_up, &den_module);

    // The reduced model: the kept coordinates with the matching pairing.
    let down_lr = coordinate_fields(&["t", "x2", "y2"]);
    let down_sym = SymmetryData::new(&down_lr, CoordinateIdeal::new(3, []), Vec::new())?;
    let omega_down = CeForm::from_word(3, 3, &[0, 1, 2], PolyScalar::one(3));
    let down_cocycle = Cocycle::new(&down_lr, omega_down.clone(), 2)?;
    let pair_down = PairWindow::new(&down_sym, 2, bound);
    let down_module = SymmetryModule::new(&down_sym, 0)?;
    let down_pairs = numerator_subspace(&down_sym, &omega_down, &pair_down, &down_module, true);

    // The two downstairs witnesses, re-proved through the pair validator,
    // and the mispairing control.
    let boost_alpha = CeForm::from_word(
        3,
        3,
        &[2],
        PolyScalar::monomial(3, vec![1, 1, 0], Rational::one()),
    );
    let boost_field = LrElement::single(3, 3, 1, PolyScalar::var(3, 1))
        .sub(&LrElement::single(3, 3, 0, PolyScalar::var(3, 0)));
    HamPair::new(&down_lr, &down_cocycle, boost_alpha.clone(), boost_field.clone())?;
    let rotation_alpha = CeForm::from_word(
        3,
        3,
        &[2],
        &PolyScalar::monomial(3, vec![2, 0, 0], rat(-1, 2))
            + &PolyScalar::monomial(3, vec![0, 2, 0], rat(-1, 2)),
    );
    let rotation_field = LrElement::single(3, 3, 0, PolyScalar::var(3, 1))
        .sub(&LrElement::single(3, 3, 1, PolyScalar::var(3, 0)));
    HamPair::new(
        &down_lr,
        &down_cocycle,
        rotation_alpha.clone(),
        rotation_field.clone(),
    )?;
    let mispairing_rejected = HamPair::new(
        &down_lr,
        &down_cocycle,
        boost_alpha.clone(),
        rotation_field.clone(),
    )
    .is_err();

    let p = pushdown_matrix(&pair_up, &pair_down);
    for (i, v) in den_up.basis().iter().enumerate() {
        if p.mul_vec(v).iter().any(|c| !c.is_zero()) {
            return Err(ReductionError::Containment(format!(
                "the pushdown does not kill denominator element {i}"
            )));
        }
    }
    let image_rows: Vec<Vec<Rational>> = num_up.basis().iter().map(|v| p.mul_vec(v)).collect();
    let image = Subspace::span(pair_down.dim(), &image_rows);
    if !down_pairs.contains_subspace(&image) {
        return Err(ReductionError::Containment(
            "the pushdown leaves the downstairs pair space".into(),
        ));
    }

    let window_error = || {
        ReductionError::Containment(
            "a downstairs witness does not fit the window; raise the bound".into(),
        )
    };
    let boost_coords = pair_down
        .coords(&boost_alpha, &boost_field)
        .ok_or_else(window_error)?;
    let rotation_coords = pair_down
        .coords(&rotation_alpha, &rotation_field)
        .ok_or_else(window_error)?;
    let boost_lifts = image.contains(&boost_coords);
    let rotation_obstructed = !image.contains(&rotation_coords);

    // Injectivity of the induced map on the quotient: what the pushdown
    // hides upstairs is exactly the denominator.
    let kernel = Subspace::preimage(&p, &Subspace::zero(pair_down.dim()));
    let hidden = num_up.intersect(&kernel);
    if hidden != den_up {
        return Err(ReductionError::Containment(
            "the hidden part upstairs differs from the denominator".into(),
        ));
    }

    let obstruction = rotation_obstruction_certificate(&sym, &omega)?;

    Ok(ResidueDefectReport {
        bound,
        multiplier_bound,
        upstairs_numerator: num_up.dim(),
        upstairs_denominator: den_up.dim(),
        downstairs_pairs: down_pairs.dim(),
        image_dimension: image.dim(),
        boost_lifts,
        rotation_obstructed,
        mispairing_rejected,
        obstruction,
    })
}

/// Outcome of the symplectic fixture analysis.
#[derive(Debug, Clone)]
pub struct SymplecticReport {
    pub bound: u32,
    pub multiplier_bound: u32,
    pub numerator: usize,
    pub denominator: usize,
    pub quotient: usize,
    /// The denominator's function part equals the windowed ideal exactly.
    pub denominator_matches_ideal_slice: bool,
    /// Verified bracket closures of a numerator function against a
    /// denominator function.
    pub poisson_cases: usize,
    pub zero_momentum_denominator: usize,
    pub zero_momentum_quotient: usize,
    /// Dropping the Lie-derivative conditions changes nothing, thanks to
    /// the momentum.
    pub shortcut_agrees: bool,
}

/// Analyzes the symplectic fixture: the reduced pair spaces, the
/// two-sided identification of the denominator with the windowed ideal,
/// the Poisson closure of the denominator against the numerator, the
/// zero-symmetry variant, and the momentum shortcut.
pub fn symplectic_denominator_check(
    bound: u32,
    multiplier_bound: u32,
) -> Result<SymplecticReport, ReductionError> {
    let (sym, omega, momentum) = symplectic_data();
    let reduced = reduced_observables(&sym, &omega, 1, bound, multiplier_bound)?;

    let form_window = reduced.window.form();
    let null_functions = form_window.null_slice(&sym);
    let projected_rows: Vec<Vec<Rational>> = reduced
        .denominator
        .basis()
        .iter()
        .map(|v| v[..form_window.dim()].to_vec())
        .collect();
    let projected = Subspace::span(form_window.dim(), &projected_rows);
    let denominator_matches_ideal_slice = projected == null_functions;

    let function_of = |v: &[Rational]| {
        let (form, _) = reduced.window.decode(v);
        form.coeff(&[])
    };
    let mut poisson_cases = 0;
    for num_vec in reduced.numerator.basis() {
        let f = function_of(num_vec);
        for den_vec in reduced.denominator.basis() {
            let g = function_of(den_vec);
            let bracket = &(&f.partial(0) * &g.partial(1)) - &(&f.partial(1) * &g.partial(0));
            if !sym.ideal().contains(&bracket) {
                return Err(ReductionError::Bracket(format!(
                    "the bracket of {} with {} leaves the ideal",
                    f.format_with(sym.lr().var_names()),
                    g.format_with(sym.lr().var_names())
                )));
            }
            poisson_cases += 1;
        }
    }

    let bare = SymmetryData::new(sym.lr(), CoordinateIdeal::new(2, [1]), Vec::new())?;
    let bare_reduced = reduced_observables(&bare, &omega, 1, bound, multiplier_bound)?;

    let shortcut =
        covariant_momentum_shortcut(&sym, &omega, 1, bound, multiplier_bound, &[momentum])?;

    Ok(SymplecticReport {
        bound,
        multiplier_bound,
        numerator: reduced.numerator.dim(),
        denominator: reduced.denominator.dim(),
        quotient: reduced.quotient.dim(),
        denominator_matches_ideal_slice,
        poisson_cases,
        zero_momentum_denominator: bare_reduced.denominator.dim(),
        zero_momentum_quotient: bare_reduced.quotient.dim(),
        shortcut_agrees: shortcut.agrees,
    })
}

/// Outcome of the constraint-manifold analysis: each pair is the computed
/// quotient dimension against the independent combinatorial count.
#[derive(Debug, Clone)]
pub struct ManifoldReport {
    pub normal: usize,
    pub foliation: usize,
    pub transverse: usize,
    pub bound: u32,
    pub multiplier_bound: u32,
    /// Reduced functions: observable functions modulo the ideal window.
    pub functions: (usize, usize),
    /// Reduced fields: the normalizer modulo the symmetry module.
    pub fields: (usize, usize),
    /// Reduced one-forms: reducible forms modulo null forms.
    pub one_forms: (usize, usize),
    /// Reduced one-forms with no symmetries imposed, where only the
    /// constrained directions disappear.
    pub unconstrained_one_forms: (usize, usize),
}

impl ManifoldReport {
    pub fn all_match(&self) -> bool {
        let pairs = [
            self.functions,
            self.fields,
            self.one_forms,
            self.unconstrained_one_forms,
        ];
        pairs.iter().all(|(computed, expected)| computed == expected)
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut out: usize = 1;
    for i in 0..k {
        out = out * (n - i) / (i + 1);
    }
    out
}

/// Analyzes a flat constraint manifold: the reduced functions, fields,
/// and one-forms all match the counts for a polynomial model on the
/// transverse coordinates alone, and dropping the symmetries leaves the
/// foliation coordinates alive.
pub fn constraint_manifold_check(
    normal: usize,
    foliation: usize,
    transverse: usize,
    bound: u32,
    multiplier_bound: u32,
) -> Result<ManifoldReport, ReductionError> {
    let sym = manifold_data(normal, foliation, transverse);
    let d = bound as usize;
    let per_function = binomial(transverse + d, transverse);
    let free = foliation + transverse;
    let expected_unconstrained = free * binomial(free + d, free);

    let quotient_of = |den: &Subspace, num: &Subspace, what: &str| {
        QuotientBasis::new(den, num)
            .map(|q| q.dim())
            .map_err(|e| {
                ReductionError::Containment(format!("the {what} quotient is malformed: {e}"))
            })
    };

    let functions_level = build_b_prime(&sym, 0, bound)?;
    let functions = quotient_of(
        &functions_level.null,
        &functions_level.reducible,
        "function",
    )?;
    let fields_report = build_y(&sym, bound, multiplier_bound)?;
    let fields = quotient_of(&fields_report.null, &fields_report.normalizer, "field")?;
    let forms_report = build_b_prime(&sym, 1, bound)?;
    let one_forms = quotient_of(&forms_report.null, &forms_report.reducible, "one-form")?;

    let bare = SymmetryData::new(
        sym.lr(),
        CoordinateIdeal::new(sym.vars(), 0..normal),
        Vec::new(),
    )?;
    let bare_forms = build_b_prime(&bare, 1, bound)?;
    let unconstrained_one_forms = quotient_of(
        &bare_forms.null,
        &bare_forms.reducible,
        "unconstrained one-form",
    )?;

    Ok(ManifoldReport {
        normal,
        foliation,
        transverse,
        bound,
        multiplier_bound,
        functions: (functions, per_function),
        fields: (fields, transverse * per_function),
        one_forms: (one_forms, transverse * per_function),
        unconstrained_one_forms: (unconstrained_one_forms, expected_unconstrained),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residue_defect_at_low_degree() {
        let report = residue_defect_check(2, 2).expect("the fixture analyzes");
        assert!(report.boost_lifts, "the boost pair lifts");
        assert!(report.rotation_obstructed, "the rotation pair does not lift");
        assert!(report.mispairing_rejected, "the mispaired witness fails");
        assert_eq!(report.obstruction.obstructed_coefficient, Rational::one());
        assert_eq!(report.obstruction.verified_shapes, 15);
        assert!(report.image_dimension < report.downstairs_pairs);
        assert!(report.upstairs_denominator > 0);
    }

    #[test]
    fn residue_reduction_interior_and_denominator() {
        let (sym, omega) = r5_residue_data();
        let reduced = reduced_observables(&sym, &omega, 2, 2, 2).expect("the fixture reduces");
        assert_eq!(reduced.interior.len(), 1);
        assert_eq!(reduced.interior[0].numerator.dim(), 16);
        assert_eq!(reduced.interior[0].denominator.dim(), 6);
        assert_eq!(reduced.interior[0].quotient.dim(), 10);
        assert!(reduced.quantifier_variants_agree);
        assert!(reduced.brackets.l1_cases > 0);
        assert!(reduced.brackets.l2_cases > 0);
        assert!(reduced.brackets.higher_cases > 0);

        // The momentum pair (-y1 dt, d/dx1) is pure gauge.
        let alpha = CeForm::from_word(
            5,
            5,
            &[0],
            PolyScalar::monomial(5, vec![0, 0, 0, 1, 0], -Rational::one()),
        );
        let coords = reduced
            .window
            .coords(&alpha, &LrElement::basis(5, 5, 1))
            .expect("the pair fits the window");
        assert!(reduced.denominator.contains(&coords));
        let class = reduced.quotient.project(&coords).expect("a numerator pair");
        assert!(class.iter().all(Rational::is_zero));
    }

    #[test]
    fn symplectic_denominator_is_the_ideal() {
        let report = symplectic_denominator_check(3, 3).expect("the fixture analyzes");
        assert_eq!(report.numerator, 7);
        assert_eq!(report.denominator, 6);
        assert_eq!(report.quotient, 1);
        assert!(report.denominator_matches_ideal_slice);
        assert_eq!(report.poisson_cases, 42);
        assert_eq!(report.zero_momentum_denominator, 3);
        assert_eq!(report.zero_momentum_quotient, 4);
        assert!(report.shortcut_agrees);
    }

    #[test]
    fn zero_momentum_classes_are_the_expected_functions() {
        let (_, omega, _) = symplectic_data();
        let lr = coordinate_fields(&["x", "y"]);
        let bare = SymmetryData::new(&lr, CoordinateIdeal::new(2, [1]), Vec::new())
            .expect("no symmetries to validate");
        let reduced = reduced_observables(&bare, &omega, 1, 3, 3).expect("the fixture reduces");
        assert_eq!(reduced.quotient.dim(), 4);

        // (y, -d/dx) survives; (y^2, -2y d/dx) is pure gauge.
        let survivor = reduced
            .window
            .coords(
                &CeForm::scalar(2, 2, PolyScalar::var(2, 1)),
                &LrElement::single(2, 2, 0, PolyScalar::constant(2, rat(-1, 1))),
            )
            .expect("fits the window");
        let class = reduced.quotient.project(&survivor).expect("a numerator pair");
        assert!(class.iter().any(|c| !c.is_zero()));

        let gauge = reduced
            .window
            .coords(
                &CeForm::scalar(2, 2, PolyScalar::monomial(2, vec![0, 2], Rational::one())),
                &LrElement::single(2, 2, 0, PolyScalar::monomial(2, vec![0, 1], rat(-2, 1))),
            )
            .expect("fits the window");
        assert!(reduced.denominator.contains(&gauge));

        // The four class representatives are functions with the expected
        // leading monomials: 1, y, xy, x^2 y.
        let expected = [
            vec![0u32, 0],
            vec![0, 1],
            vec![1, 1],
            vec![2, 1],
        ];
        for (rep, exps) in reduced.quotient.representatives().iter().zip(&expected) {
            let (form, _) = reduced.window.decode(rep);
            let f = form.coeff(&[]);
            assert!(
                !f.coeff(exps).is_zero(),
                "representative {} misses {:?}",
                f.format_with(bare.lr().var_names()),
                exps
            );
        }
    }

    #[test]
    fn constraint_manifold_counts_match() {
        let report = constraint_manifold_check(1, 1, 1, 2, 2).expect("the fixture analyzes");
        assert_eq!(report.functions, (3, 3));
        assert_eq!(report.fields, (3, 3));
        assert_eq!(report.one_forms, (3, 3));
        assert_eq!(report.unconstrained_one_forms, (12, 12));
        assert!(report.all_match());
    }

    #[test]
    fn full_foliation_leaves_only_constants() {
        let report = constraint_manifold_check(1, 2, 0, 2, 2).expect("the fixture analyzes");
        assert_eq!(report.functions, (1, 1));
        assert_eq!(report.fields, (0, 0));
        assert_eq!(report.one_forms, (0, 0));
        assert!(report.all_match());
    }
}
