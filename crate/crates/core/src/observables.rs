//! Hamiltonian pairs and the L-infinity algebra of observables.
//!
//! Fix a closed form `omega` of degree `k + 1` in the Chevalley-Eilenberg
//! complex of a [`LieRinehartInstance`] (a [`Cocycle`]). A **Hamiltonian
//! pair** is `(alpha, X)` with `alpha` of degree `k - 1` and `X` a module
//! element satisfying `i_X omega = -d alpha` exactly. Pairs carry two
//! bracket structures:
//!
//! * the **Leibniz bracket** `[(a1, X1), (a2, X2)] = (Lie_{X1} a2,
//!   [X1, X2])`, a left Leibniz algebra: `[a,[b,c]] = [[a,b],c] +
//!   [b,[a,c]]`;
//! * the **observables L-infinity algebra** on the graded carrier
//!   `Ham^0 = pairs`, `Ham^i = CE^{k-1+i}` for `-(k-1) <= i <= -1`, with
//!   multibrackets
//!   `l_1(alpha) = d alpha` (sent to the pair `(d alpha, 0)` at `i = -1`,
//!   zero on pairs), and for `j >= 2` on pairs
//!   `l_j = (-1)^{j+1} i_{X_1 ^ ... ^ X_j} omega` (the `j = 2` bracket
//!   additionally carries the field `[X_1, X_2]`); every `l_j` with
//!   `j >= 2` vanishes on inputs of nonzero degree.
//!
//! Contraction by a wedge word composes rightmost-first with leftmost-slot
//! insertion (see [`CeForm::contract`]), so
//! `i_{X1} i_{X2} omega = omega(X2, X1, ...)` as an evaluation. The
//! `(-1)^{j+1}` prefactor is forced by closure: for valid pairs,
//! `i_{[X,Y]} omega = d(i_X i_Y omega)`, so `l_2` lands in the pair space
//! exactly when its form component is `-i_{X1} i_{X2} omega`. The
//! constructor re-proves this on every bracket, so a convention drift
//! anywhere in the calculus fails loudly here.
//!
//! The generalized Jacobi identities collapse to
//!
//! ```text
//! (del l_m)(x_1, ..., x_{m+1})
//!   = sum_{i<j} (-1)^{i+j} l_m(l_2(x_i, x_j), ..., ^x_i, ..., ^x_j, ...)
//!   = l_1(l_{m+1}(x_1, ..., x_{m+1}))          for 2 <= m <= k + 1,
//! ```
//!
//! with `l_{k+2} := 0`; [`ObservablesComplex::verify_linfty`] checks them
//! on every ordered tuple drawn from a pair corpus. The Leibniz and `l_2`
//! brackets differ by an explicit exact term:
//! `Lie_{X1} a2 - (-i_{X1} i_{X2} omega) = d(i_{X1} a2)`, asserted with
//! its witness by [`ObservablesComplex::bracket_difference_witness`].
//!
//! Pair spaces are computed exactly: the defining equation is linear, so a
//! basis is the kernel of `(alpha, X) -> i_X omega + d alpha` over a
//! finite coefficient window (everything, for a constant-coefficient
//! instance; polynomial coefficients of bounded degree otherwise).
//!
//! A **covariant momentum map** for an action of an ordinary Lie algebra
//! assigns to each generator a Hamiltonian pair whose field component is
//! the generator's fundamental field, intertwining brackets with the
//! Leibniz bracket; [`check_covariant_momentum`] verifies both conditions
//! on all generator pairs.

use crate::cartan::CeForm;
use crate::exactlin::{kernel_of_images, Rational};
use crate::graded::increasing_words;
use crate::liering::{monomial_basis, LieRinehartInstance, LrElement, PolyScalar};
use crate::multivec::Multivector;
use num::Zero;
use std::collections::BTreeMap;
use thiserror::Error;

/// Failures in observables construction and verification, with exact
/// witnesses.
#[derive(Debug, Error)]
pub enum ObservablesError {
    #[error("form is not closed: d omega = {residual}")]
    NotClosed { residual: String },
    #[error("form has degree {found:?}, expected {expected}")]
    WrongDegree { expected: usize, found: Vec<usize> },
    #[error("pair invariant fails: i_X omega + d alpha = {residual}")]
    NotHamiltonian { residual: String },
    #[error("polynomial coefficients require a degree bound for the pair solver")]
    MissingBound,
    #[error("L-infinity relation m = {m} fails on tuple {tuple:?}: {witness}")]
    Relation {
        m: usize,
        tuple: Vec<usize>,
        witness: String,
    },
    #[error("momentum condition '{condition}' fails for generators {indices:?}: {witness}")]
    Momentum {
        condition: &'static str,
        indices: Vec<usize>,
        witness: String,
    },
    #[error("degree misuse: {0}")]
    DegreeMisuse(String),
}

/// A closed CE form of degree `k + 1`, the structure form of the
/// observables algebra. The zero form is admitted at every `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cocycle {
    omega: CeForm,
    k: usize,
}

impl Cocycle {
    /// Validates closedness and homogeneity; `k >= 1`.
    pub fn new(lr: &LieRinehartInstance, omega: CeForm, k: usize) -> Result<Self, ObservablesError> {
        if k == 0 {
            return Err(ObservablesError::DegreeMisuse(
                "the structure form must have degree at least 2".into(),
            ));
        }
        if !omega.is_zero() && omega.homogeneous_degree() != Some(k + 1) {
            return Err(ObservablesError::WrongDegree {
                expected: k + 1,
                found: omega.degrees(),
            });
        }
        let residual = omega.dce(lr);
        if !residual.is_zero() {
            return Err(ObservablesError::NotClosed {
                residual: residual.format_with(lr.basis_names(), lr.var_names()),
            });
        }
        Ok(Cocycle { omega, k })
    }

    pub fn omega(&self) -> &CeForm {
        &self.omega
    }

    /// The degree parameter: `omega` has CE degree `k + 1`.
    pub fn k(&self) -> usize {
        self.k
    }
}

/// A Hamiltonian pair `(alpha, X)` with `i_X omega = -d alpha`, checked
/// exactly at construction. Linear combinations stay in the space (the
/// defining equation is linear), so [`HamPair::add`] and
/// [`HamPair::scale`] skip the re-check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HamPair {
    alpha: CeForm,
    field: LrElement,
}

impl HamPair {
    pub fn new(
        lr: &LieRinehartInstance,
        cocycle: &Cocycle,
        alpha: CeForm,
        field: LrElement,
    ) -> Result<Self, ObservablesError> {
        if !alpha.is_zero() && alpha.homogeneous_degree() != Some(cocycle.k() - 1) {
            return Err(ObservablesError::WrongDegree {
                expected: cocycle.k() - 1,
                found: alpha.degrees(),
            });
        }
        let contraction = cocycle
            .omega()
            .contract(&Multivector::from_element(&field, lr.vars()));
        let residual = contraction.add(&alpha.dce(lr));
        if !residual.is_zero() {
            return Err(ObservablesError::NotHamiltonian {
                residual: residual.format_with(lr.basis_names(), lr.var_names()),
            });
        }
        Ok(HamPair { alpha, field })
    }

    pub fn zero(vars: usize, rank: usize) -> Self {
        HamPair {
            alpha: CeForm::zero(vars, rank),
            field: LrElement::zero(vars, rank),
        }
    }

    pub fn alpha(&self) -> &CeForm {
        &self.alpha
    }

    pub fn field(&self) -> &LrElement {
        &self.field
    }

    pub fn field_multivector(&self, vars: usize) -> Multivector {
        Multivector::from_element(&self.field, vars)
    }

    pub fn is_zero(&self) -> bool {
        self.alpha.is_zero() && self.field.is_zero()
    }

    pub fn add(&self, other: &HamPair) -> HamPair {
        HamPair {
            alpha: self.alpha.add(&other.alpha),
            field: self.field.add(&other.field),
        }
    }

    pub fn scale(&self, c: &Rational) -> HamPair {
        let f = PolyScalar::constant(self.field.coeffs.first().map_or(0, PolyScalar::vars), c.clone());
        HamPair {
            alpha: self.alpha.scale_fn(&f),
            field: self.field.scale_fn(&f),
        }
    }

    /// Flattens both components into one sparse coordinate vector; form
    /// keys are tagged 0, field keys 1. Used for span membership and
    /// quotient computations on pair spaces.
    pub fn coordinates(&self) -> BTreeMap<(u8, Vec<usize>, Vec<u32>), Rational> {
        let mut out = BTreeMap::new();
        for ((word, exps), c) in self.alpha.coordinates() {
            out.insert((0u8, word, exps), c);
        }
        for ((i, exps), c) in self.field.coordinates() {
            out.insert((1u8, vec![i], exps), c);
        }
        out
    }

    pub fn format_with(&self, basis_names: &[String], var_names: &[String]) -> String {
        format!(
            "({}, {})",
            self.alpha.format_with(basis_names, var_names),
            self.field.format_with(basis_names, var_names)
        )
    }
}

/// An element of the graded carrier: a pair at degree 0, or a homogeneous
/// form at degree `deg - (k - 1) < 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ObsElement {
    Pair(HamPair),
    Form(CeForm),
}

/// Tuple counts per verified L-infinity relation, keyed by `m`.
#[derive(Debug, Clone, Default)]
pub struct LinftyStats {
    pub cases: BTreeMap<usize, usize>,
}

impl LinftyStats {
    pub fn total(&self) -> usize {
        self.cases.values().sum()
    }
}

/// Outcome of a covariant-momentum verification.
#[derive(Debug, Clone)]
pub struct MomentumStats {
    pub generators: usize,
    pub bracket_pairs: usize,
}

/// The observables algebra of a cocycle: the instance, the structure
/// form, and an exact basis of the degree-0 pair space.
#[derive(Debug, Clone)]
pub struct ObservablesComplex {
    lr: LieRinehartInstance,
    cocycle: Cocycle,
    ham0: Vec<HamPair>,
}

impl ObservablesComplex {
    /// Solves for the pair basis. Polynomial instances need a coefficient
    /// degree bound; constant-coefficient instances ignore it.
    pub fn new(
        lr: &LieRinehartInstance,
        cocycle: Cocycle,
        degree_bound: Option<u32>,
    ) -> Result<Self, ObservablesError> {
        let ham0 = ham_pairs(lr, &cocycle, degree_bound)?;
        Ok(ObservablesComplex {
            lr: lr.clone(),
            cocycle,
            ham0,
        })
    }

    pub fn lr(&self) -> &LieRinehartInstance {
        &self.lr
    }

    pub fn cocycle(&self) -> &Cocycle {
        &self.cocycle
    }

    pub fn k(&self) -> usize {
        self.cocycle.k()
    }

    pub fn ham0_basis(&self) -> &[HamPair] {
        &self.ham0
    }

    /// The carrier degrees `-(k-1), ..., 0`.
    pub fn ham_degrees(&self) -> Vec<i64> {
        let k = self.k() as i64;
        (-(k - 1)..=0).collect()
    }

    /// The carrier degree of an element: 0 for pairs, `deg - (k-1)` for
    /// forms. Zero forms are reported at the bottom degree.
    pub fn ham_degree(&self, x: &ObsElement) -> Result<i64, ObservablesError> {
        match x {
            ObsElement::Pair(_) => Ok(0),
            ObsElement::Form(a) => {
                let k = self.k() as i64;
                let d = match a.homogeneous_degree() {
                    Some(d) => d as i64,
                    None if a.is_zero() => 0,
                    None => {
                        return Err(ObservablesError::DegreeMisuse(format!(
                            "carrier forms must be homogeneous, got degrees {:?}",
                            a.degrees()
                        )))
                    }
                };
                let i = d - (k - 1);
                if i >= 0 || i < -(k - 1) {
                    return Err(ObservablesError::DegreeMisuse(format!(
                        "form degree {d} is outside the carrier range for k = {k}"
                    )));
                }
                Ok(i)
            }
        }
    }

    /// The differential: `d` between negative degrees, `alpha -> (d alpha,
    /// 0)` into the pairs at `i = -1`, zero on pairs.
    pub fn l1(&self, x: &ObsElement) -> Result<ObsElement, ObservablesError> {
        let i = self.ham_degree(x)?;
        match x {
            ObsElement::Pair(_) => Ok(ObsElement::Pair(HamPair::zero(
                self.lr.vars(),
                self.lr.rank(),
            ))),
            ObsElement::Form(a) => {
                let da = a.dce(&self.lr);
                if i == -1 {
                    let pair = HamPair::new(
                        &self.lr,
                        &self.cocycle,
                        da,
                        LrElement::zero(self.lr.vars(), self.lr.rank()),
                    )?;
                    Ok(ObsElement::Pair(pair))
                } else {
                    Ok(ObsElement::Form(da))
                }
            }
        }
    }

    /// The form component of `l_j` on degree-0 inputs:
    /// `(-1)^{j+1} i_{X_1 ^ ... ^ X_j} omega`, any `j >= 2`. Beyond
    /// `j = k + 1` the output leaves the carrier and is zero.
    fn contraction_bracket(&self, pairs: &[HamPair]) -> CeForm {
        let j = pairs.len();
        if j > self.k() + 1 {
            return CeForm::zero(self.lr.vars(), self.lr.rank());
        }
        let mut wedge = Multivector::scalar(
            self.lr.vars(),
            self.lr.rank(),
            PolyScalar::one(self.lr.vars()),
        );
        for p in pairs {
            wedge = wedge.wedge(&p.field_multivector(self.lr.vars()));
        }
        let contraction = self.cocycle.omega().contract(&wedge);
        if j % 2 == 0 {
            contraction.neg()
        } else {
            contraction
        }
    }

    /// The binary bracket `l_2(p, q) = (-i_{X_p} i_{X_q} omega, [X_p,
    /// X_q])`. The constructor re-proves that the output is a pair, which
    /// is the closure consequence of `d omega = 0`.
    pub fn l2(&self, p: &HamPair, q: &HamPair) -> Result<HamPair, ObservablesError> {
        let alpha = self.contraction_bracket(&[p.clone(), q.clone()]);
        let field = self.lr.bracket(&p.field, &q.field);
        HamPair::new(&self.lr, &self.cocycle, alpha, field)
    }

    /// The higher brackets `l_j`, `j >= 3`, on degree-0 inputs. Inputs of
    /// nonzero degree make every `l_j` with `j >= 2` vanish, so the
    /// pair-only signature covers the nontrivial cases.
    pub fn lj(&self, pairs: &[HamPair]) -> CeForm {
        assert!(pairs.len() >= 3, "l_j with j >= 3; use l2 for the binary bracket");
        self.contraction_bracket(pairs)
    }

    /// The Leibniz bracket `(Lie_{X_p} alpha_q, [X_p, X_q])`.
    pub fn leibniz_bracket(&self, p: &HamPair, q: &HamPair) -> Result<HamPair, ObservablesError> {
        let alpha = q
            .alpha
            .lie_derivative(&self.lr, &p.field_multivector(self.lr.vars()));
        let field = self.lr.bracket(&p.field, &q.field);
        HamPair::new(&self.lr, &self.cocycle, alpha, field)
    }

    /// The Leibniz and skew brackets differ by an exact form with an
    /// explicit primitive: `pi_form(leibniz) - pi_form(l_2) = d(i_{X_p}
    /// alpha_q)`. Returns the primitive, or the discrepancy as an error.
    pub fn bracket_difference_witness(
        &self,
        p: &HamPair,
        q: &HamPair,
    ) -> Result<CeForm, ObservablesError> {
        let difference = self
            .leibniz_bracket(p, q)?
            .alpha()
            .sub(self.l2(p, q)?.alpha());
        let witness = q.alpha.contract(&p.field_multivector(self.lr.vars()));
        let residual = difference.sub(&witness.dce(&self.lr));
        if !residual.is_zero() {
            return Err(ObservablesError::Relation {
                m: 2,
                tuple: Vec::new(),
                witness: format!(
                    "bracket difference is not d(i_X alpha): residual {}",
                    residual.format_with(self.lr.basis_names(), self.lr.var_names())
                ),
            });
        }
        Ok(witness)
    }

    /// Verifies the left Leibniz identity `[a,[b,c]] = [[a,b],c] +
    /// [b,[a,c]]` on every ordered triple from the corpus.
    pub fn verify_leibniz(&self, corpus: &[HamPair]) -> Result<usize, ObservablesError> {
        let mut cases = 0;
        for (ia, a) in corpus.iter().enumerate() {
            for (ib, b) in corpus.iter().enumerate() {
                for (ic, c) in corpus.iter().enumerate() {
                    let lhs = self.leibniz_bracket(a, &self.leibniz_bracket(b, c)?)?;
                    let rhs = self
                        .leibniz_bracket(&self.leibniz_bracket(a, b)?, c)?
                        .add(&self.leibniz_bracket(b, &self.leibniz_bracket(a, c)?)?);
                    if lhs != rhs {
                        return Err(ObservablesError::Relation {
                            m: 2,
                            tuple: vec![ia, ib, ic],
                            witness: format!(
                                "left Leibniz identity fails: lhs {}, rhs {}",
                                lhs.format_with(self.lr.basis_names(), self.lr.var_names()),
                                rhs.format_with(self.lr.basis_names(), self.lr.var_names())
                            ),
                        });
                    }
                    cases += 1;
                }
            }
        }
        Ok(cases)
    }

    /// Checks `del l_m = l_1 l_{m+1}` for `m = 2, ..., k+1` (with
    /// `l_{k+2} := 0`) on every ordered `(m+1)`-tuple from the corpus.
    pub fn verify_linfty(&self, corpus: &[HamPair]) -> Result<LinftyStats, ObservablesError> {
        let mut stats = LinftyStats::default();
        for m in 2..=(self.k() + 1) {
            for tuple in Tuples::new(corpus.len(), m + 1) {
                self.check_relation(m, &tuple, corpus)?;
                *stats.cases.entry(m).or_default() += 1;
            }
        }
        Ok(stats)
    }

    /// One instance of the relation `del l_m = l_1 l_{m+1}` on the tuple
    /// `corpus[tuple[0]], ..., corpus[tuple[m]]`.
    pub fn check_relation(
        &self,
        m: usize,
        tuple: &[usize],
        corpus: &[HamPair],
    ) -> Result<(), ObservablesError> {
        assert_eq!(tuple.len(), m + 1, "the m-th relation takes m + 1 inputs");
        let xs: Vec<&HamPair> = tuple.iter().map(|&t| &corpus[t]).collect();
        let fail = |witness: String| ObservablesError::Relation {
            m,
            tuple: tuple.to_vec(),
            witness,
        };

        // Left side: sum over i < j of (-1)^{i+j} l_m(l_2(x_i, x_j), rest).
        let mut lhs_form = CeForm::zero(self.lr.vars(), self.lr.rank());
        let mut lhs_field = LrElement::zero(self.lr.vars(), self.lr.rank());
        for i in 0..=m {
            for j in (i + 1)..=m {
                let inner = self.l2(xs[i], xs[j])?;
                let mut args = vec![inner];
                for (t, x) in xs.iter().enumerate() {
                    if t != i && t != j {
                        args.push((*x).clone());
                    }
                }
                // Displayed sign with 1-based indices: (-1)^{(i+1)+(j+1)}
                // = (-1)^{i+j}.
                let positive = (i + j) % 2 == 0;
                if m == 2 {
                    let term = self.l2(&args[0], &args[1])?;
                    if positive {
                        lhs_form = lhs_form.add(term.alpha());
                        lhs_field = lhs_field.add(term.field());
                    } else {
                        lhs_form = lhs_form.sub(term.alpha());
                        lhs_field = lhs_field.sub(term.field());
                    }
                } else {
                    let term = self.contraction_bracket(&args);
                    lhs_form = if positive {
                        lhs_form.add(&term)
                    } else {
                        lhs_form.sub(&term)
                    };
                }
            }
        }

        // Right side: l_1 applied to l_{m+1}(x_1, ..., x_{m+1}).
        let top = self.contraction_bracket(&xs.iter().map(|x| (*x).clone()).collect::<Vec<_>>());
        let rhs_form = top.dce(&self.lr);

        if m == 2 {
            // The right side is a pair with zero field; the left side's
            // field must cancel (the Jacobi identity of the instance).
            if !lhs_field.is_zero() {
                return Err(fail(format!(
                    "field component does not cancel: {}",
                    lhs_field.format_with(self.lr.basis_names(), self.lr.var_names())
                )));
            }
        }
        if lhs_form != rhs_form {
            return Err(fail(format!(
                "form components differ: lhs {}, rhs {}",
                lhs_form.format_with(self.lr.basis_names(), self.lr.var_names()),
                rhs_form.format_with(self.lr.basis_names(), self.lr.var_names())
            )));
        }
        Ok(())
    }
}

/// Odometer over ordered index tuples with repetition.
struct Tuples {
    base: usize,
    current: Vec<usize>,
    done: bool,
}

impl Tuples {
    fn new(base: usize, len: usize) -> Self {
        Tuples {
            base,
            current: vec![0; len],
            done: base == 0,
        }
    }
}

impl Iterator for Tuples {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        let mut pos = self.current.len();
        loop {
            if pos == 0 {
                self.done = true;
                break;
            }
            pos -= 1;
            self.current[pos] += 1;
            if self.current[pos] < self.base {
                break;
            }
            self.current[pos] = 0;
        }
        Some(out)
    }
}

/// Exact basis of the Hamiltonian pair space `{(alpha, X) : i_X omega =
/// -d alpha}`. Constant-coefficient instances are solved completely;
/// polynomial instances over all coefficients of degree `<= degree_bound`
/// (required). The basis is canonical: kernel of the assembled defect map
/// in reduced echelon form.
pub fn ham_pairs(
    lr: &LieRinehartInstance,
    cocycle: &Cocycle,
    degree_bound: Option<u32>,
) -> Result<Vec<HamPair>, ObservablesError> {
    let window = if lr.vars() == 0 {
        monomial_basis(0, 0)
    } else {
        match degree_bound {
            Some(d) => monomial_basis(lr.vars(), d),
            None => return Err(ObservablesError::MissingBound),
        }
    };

    enum Unknown {
        FormTerm(Vec<usize>, Vec<u32>),
        FieldTerm(usize, Vec<u32>),
    }

    let mut unknowns = Vec::new();
    let mut images = Vec::new();
    for word in increasing_words(lr.rank(), cocycle.k() - 1) {
        for mono in &window {
            let coeff = PolyScalar::monomial(lr.vars(), mono.clone(), num::One::one());
            let alpha = CeForm::from_word(lr.vars(), lr.rank(), &word, coeff);
            images.push(alpha.dce(lr).coordinates());
            unknowns.push(Unknown::FormTerm(word.clone(), mono.clone()));
        }
    }
    for i in 0..lr.rank() {
        for mono in &window {
            let coeff = PolyScalar::monomial(lr.vars(), mono.clone(), num::One::one());
            let x = LrElement::single(lr.vars(), lr.rank(), i, coeff);
            let image = cocycle
                .omega()
                .contract(&Multivector::from_element(&x, lr.vars()));
            images.push(image.coordinates());
            unknowns.push(Unknown::FieldTerm(i, mono.clone()));
        }
    }

    let kernel = kernel_of_images(&images);
    let mut pairs = Vec::new();
    for vector in kernel.basis() {
        let mut alpha = CeForm::zero(lr.vars(), lr.rank());
        let mut field = LrElement::zero(lr.vars(), lr.rank());
        for (unknown, c) in unknowns.iter().zip(vector) {
            if c.is_zero() {
                continue;
            }
            match unknown {
                Unknown::FormTerm(word, mono) => {
                    let coeff = PolyScalar::monomial(lr.vars(), mono.clone(), c.clone());
                    alpha = alpha.add(&CeForm::from_word(lr.vars(), lr.rank(), word, coeff));
                }
                Unknown::FieldTerm(i, mono) => {
                    let coeff = PolyScalar::monomial(lr.vars(), mono.clone(), c.clone());
                    field = field.add(&LrElement::single(lr.vars(), lr.rank(), *i, coeff));
                }
            }
        }
        pairs.push(HamPair::new(lr, cocycle, alpha, field)?);
    }
    Ok(pairs)
}

/// Outcome of the volume fixture check on polynomial 3-space.
#[derive(Debug, Clone)]
pub struct R3Stats {
    pub corpus_size: usize,
    pub id1_cases: usize,
    pub id2_cases: usize,
    pub id3_cases: usize,
    pub linfty: LinftyStats,
}

/// Coordinate vector fields on `Q[x, y, z]`: identity anchor, zero
/// brackets.
pub fn r3_instance() -> LieRinehartInstance {
    let names = ["x", "y", "z"];
    let mut anchor = Vec::new();
    for i in 0..3 {
        let mut row = vec![PolyScalar::zero(3); 3];
        row[i] = PolyScalar::one(3);
        anchor.push(row);
    }
    LieRinehartInstance::poly(
        3,
        3,
        names.iter().map(|s| s.to_string()).collect(),
        names.iter().map(|s| format!("d/d{s}")).collect(),
        anchor,
        BTreeMap::new(),
    )
    .expect("coordinate fields on 3-space validate")
}

/// The volume observables algebra on 3-space: `omega = dx ^ dy ^ dz`,
/// `k = 2`. The pair basis is not solved here (the identities only need
/// the brackets), so no degree bound is involved.
pub fn r3_volume_complex() -> ObservablesComplex {
    let lr = r3_instance();
    let omega = CeForm::from_word(3, 3, &[0, 1, 2], PolyScalar::one(3));
    let cocycle = Cocycle::new(&lr, omega, 2).expect("the volume form is closed");
    ObservablesComplex {
        lr,
        cocycle,
        ham0: Vec::new(),
    }
}

/// A dense-ish random polynomial: each monomial of degree `<= max_deg`
/// enters with probability 1/2, with a small nonzero integer coefficient.
fn random_poly<R: rand::Rng>(rng: &mut R, vars: usize, max_deg: u32) -> PolyScalar {
    let mut out = PolyScalar::zero(vars);
    for mono in monomial_basis(vars, max_deg) {
        if rng.gen_bool(0.5) {
            let c: i64 = rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
            out = &out + &PolyScalar::monomial(vars, mono, Rational::from_integer(c.into()));
        }
    }
    out
}

/// A seeded corpus of Hamiltonian pairs for the volume form on 3-space,
/// built without solving: from a random 1-form `beta`, the field dual to
/// `d beta` under the volume pairing makes `(-beta, X)` a pair by
/// construction (`i_X omega = d beta` exactly). Coefficient degrees of
/// `beta` cycle through 1, 2, 3, so the fields cycle through constant,
/// linear and quadratic coefficients.
pub fn r3_pair_corpus(complex: &ObservablesComplex, seed: u64, size: usize) -> Vec<HamPair> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let lr = complex.lr();
    let mut out = Vec::new();
    while out.len() < size {
        let deg = 1 + (out.len() % 3) as u32;
        let mut beta = CeForm::zero(3, 3);
        for i in 0..3 {
            beta = beta.add(&CeForm::from_word(
                3,
                3,
                &[i],
                random_poly(&mut rng, 3, deg),
            ));
        }
        let gamma = beta.dce(lr);
        let field = LrElement {
            coeffs: vec![
                gamma.coeff(&[1, 2]),
                -&gamma.coeff(&[0, 2]),
                gamma.coeff(&[0, 1]),
            ],
        };
        let pair = HamPair::new(lr, complex.cocycle(), beta.neg(), field)
            .expect("(-beta, dual of d beta) is a pair by construction");
        if !pair.is_zero() {
            out.push(pair);
        }
    }
    out
}

/// The three displayed identities of the volume example on 3-space,
/// verified exactly over a seeded corpus:
///
/// 1. `l_2(l_1(f), q) = 0` for functions `f` (the lift of `l_1 f` has
///    zero field component, so both bracket components vanish);
/// 2. `del l_2 = l_1 l_3` on triples — all increasing combinations from
///    the corpus, plus all ordered triples over a leading slice (the
///    expression is alternating, so combinations carry the content and
///    the ordered slice guards the bookkeeping);
/// 3. `del l_3 = 0` on 4-tuples (`l_4` leaves the carrier), same tuple
///    policy.
///
/// The L-infinity relations are additionally verified wholesale over a
/// leading slice via [`ObservablesComplex::verify_linfty`].
pub fn r3_fixture_check(seed: u64, corpus_size: usize) -> Result<R3Stats, ObservablesError> {
    use rand::SeedableRng;
    let complex = r3_volume_complex();
    let corpus = r3_pair_corpus(&complex, seed, corpus_size);
    let slice = corpus.len().min(4);

    // Identity 1, over seeded functions against the whole corpus.
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let mut id1_cases = 0;
    for _ in 0..5 {
        let f = ObsElement::Form(CeForm::scalar(3, 3, random_poly(&mut rng, 3, 2)));
        let lifted = match complex.l1(&f)? {
            ObsElement::Pair(p) => p,
            ObsElement::Form(_) => unreachable!("functions lift to pairs when k = 2"),
        };
        for (qi, q) in corpus.iter().enumerate() {
            let out = complex.l2(&lifted, q)?;
            if !out.is_zero() {
                return Err(ObservablesError::Relation {
                    m: 2,
                    tuple: vec![qi],
                    witness: format!(
                        "l2(l1(f), q) = {} is nonzero",
                        out.format_with(complex.lr().basis_names(), complex.lr().var_names())
                    ),
                });
            }
            id1_cases += 1;
        }
    }

    // Identity 2: del l_2 = l_1 l_3 on increasing triples, then ordered
    // triples over the leading slice.
    let mut id2_cases = 0;
    for i in 0..corpus.len() {
        for j in (i + 1)..corpus.len() {
            for l in (j + 1)..corpus.len() {
                complex.check_relation(2, &[i, j, l], &corpus)?;
                id2_cases += 1;
            }
        }
    }
    for tuple in Tuples::new(slice, 3) {
        complex.check_relation(2, &tuple, &corpus)?;
        id2_cases += 1;
    }

    // Identity 3: del l_3 = 0 on increasing 4-tuples, then ordered
    // 4-tuples over the leading slice.
    let mut id3_cases = 0;
    for i in 0..corpus.len() {
        for j in (i + 1)..corpus.len() {
            for l in (j + 1)..corpus.len() {
                for m in (l + 1)..corpus.len() {
                    complex.check_relation(3, &[i, j, l, m], &corpus)?;
                    id3_cases += 1;
                }
            }
        }
    }
    for tuple in Tuples::new(slice, 4) {
        complex.check_relation(3, &tuple, &corpus)?;
        id3_cases += 1;
    }

    let linfty = complex.verify_linfty(&corpus[..slice])?;

    Ok(R3Stats {
        corpus_size: corpus.len(),
        id1_cases,
        id2_cases,
        id3_cases,
        linfty,
    })
}

/// Verifies a covariant momentum map for an action of an ordinary Lie
/// algebra `sym` (constant structure tables): each generator's pair must
/// project onto its fundamental field, and the assignment must intertwine
/// the algebra bracket with the Leibniz bracket on all generator pairs.
pub fn check_covariant_momentum(
    complex: &ObservablesComplex,
    sym: &LieRinehartInstance,
    mu: &[HamPair],
    action: &[LrElement],
) -> Result<MomentumStats, ObservablesError> {
    assert!(sym.is_lie(), "the acting algebra must have constant tables");
    assert_eq!(mu.len(), sym.rank(), "one pair per generator");
    assert_eq!(action.len(), sym.rank(), "one fundamental field per generator");
    let lr = complex.lr();

    for (i, pair) in mu.iter().enumerate() {
        if pair.field() != &action[i] {
            return Err(ObservablesError::Momentum {
                condition: "pi_X(mu(xi)) = fundamental field",
                indices: vec![i],
                witness: format!(
                    "mu field {}, fundamental field {}",
                    pair.field().format_with(lr.basis_names(), lr.var_names()),
                    action[i].format_with(lr.basis_names(), lr.var_names())
                ),
            });
        }
    }

    let mut bracket_pairs = 0;
    for i in 0..sym.rank() {
        for j in 0..sym.rank() {
            // mu extends linearly: [xi_i, xi_j] has constant coefficients.
            let table = sym.basis_bracket(i, j);
            let mut expected = HamPair::zero(lr.vars(), lr.rank());
            for (m, c) in table.coeffs.iter().enumerate() {
                if !c.is_zero() {
                    expected = expected.add(&mu[m].scale(&c.constant_part()));
                }
            }
            let got = complex.leibniz_bracket(&mu[i], &mu[j])?;
            if got != expected {
                return Err(ObservablesError::Momentum {
                    condition: "mu([xi, eta]) = [mu(xi), mu(eta)]",
                    indices: vec![i, j],
                    witness: format!(
                        "expected {}, got {}",
                        expected.format_with(lr.basis_names(), lr.var_names()),
                        got.format_with(lr.basis_names(), lr.var_names())
                    ),
                });
            }
            bracket_pairs += 1;
        }
    }
    Ok(MomentumStats {
        generators: sym.rank(),
        bracket_pairs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{rat, solve_in_span, ExactMatrix};
    use std::collections::BTreeMap as Map;

    fn so3() -> LieRinehartInstance {
        let mut brackets = Map::new();
        brackets.insert((0, 1), vec![rat(0, 1), rat(0, 1), rat(1, 1)]);
        brackets.insert((1, 2), vec![rat(1, 1), rat(0, 1), rat(0, 1)]);
        brackets.insert((0, 2), vec![rat(0, 1), rat(-1, 1), rat(0, 1)]);
        LieRinehartInstance::lie(
            3,
            vec!["e0".into(), "e1".into(), "e2".into()],
            brackets,
        )
        .unwrap()
    }

    fn so3_volume() -> ObservablesComplex {
        let lr = so3();
        let omega = CeForm::from_word(0, 3, &[0, 1, 2], PolyScalar::one(0));
        let cocycle = Cocycle::new(&lr, omega, 2).unwrap();
        ObservablesComplex::new(&lr, cocycle, None).unwrap()
    }

    /// Independent oracle for the so(3) pair dimension: the defining
    /// system over the 6 unknowns (a_0, a_1, a_2, x_0, x_1, x_2), written
    /// out by hand from i_{e_i} omega and the structure equations
    /// d e0* = -e1*^e2*, d e1* = e0*^e2*, d e2* = -e0*^e1*:
    ///   e1*^e2*: x_0 - a_0 = 0
    ///   e0*^e2*: -x_1 + a_1 = 0
    ///   e0*^e1*: x_2 - a_2 = 0
    /// Rank 3, so the pair space has dimension 3.
    #[test]
    fn so3_pair_dimension_matches_hand_built_system() {
        let rows = vec![
            vec![rat(-1, 1), rat(0, 1), rat(0, 1), rat(1, 1), rat(0, 1), rat(0, 1)],
            vec![rat(0, 1), rat(1, 1), rat(0, 1), rat(0, 1), rat(-1, 1), rat(0, 1)],
            vec![rat(0, 1), rat(0, 1), rat(-1, 1), rat(0, 1), rat(0, 1), rat(1, 1)],
        ];
        let system = ExactMatrix::from_rows(&rows);
        assert_eq!(system.rank(), 3);
        let expected_dim = 6 - system.rank();
        let complex = so3_volume();
        assert_eq!(complex.ham0_basis().len(), expected_dim);
        // The solved pairs realize the diagonal pattern a_i = x_i.
        for pair in complex.ham0_basis() {
            for i in 0..3 {
                assert_eq!(
                    pair.alpha().coeff(&[i]),
                    pair.field().coeffs[i],
                    "pair couples e{i}* with e{i}"
                );
            }
        }
    }

    #[test]
    fn so3_canonical_pairs_are_hamiltonian() {
        let complex = so3_volume();
        for i in 0..3 {
            let alpha = CeForm::from_word(0, 3, &[i], PolyScalar::one(0));
            let field = LrElement::basis(0, 3, i);
            HamPair::new(complex.lr(), complex.cocycle(), alpha, field)
                .expect("(e_i*, e_i) is a Hamiltonian pair");
        }
    }

    fn so3_canonical_pairs(complex: &ObservablesComplex) -> Vec<HamPair> {
        (0..3)
            .map(|i| {
                HamPair::new(
                    complex.lr(),
                    complex.cocycle(),
                    CeForm::from_word(0, 3, &[i], PolyScalar::one(0)),
                    LrElement::basis(0, 3, i),
                )
                .unwrap()
            })
            .collect()
    }

    #[test]
    fn l3_on_canonical_triple_is_frozen_scalar() {
        // By direct contraction: i_{e0^e1^e2}(e0*^e1*^e2*) = -1, and the
        // j = 3 prefactor is +1, so l_3 of the canonical triple is -1.
        let complex = so3_volume();
        let pairs = so3_canonical_pairs(&complex);
        let got = complex.lj(&pairs);
        assert_eq!(
            got,
            CeForm::scalar(0, 3, PolyScalar::constant(0, rat(-1, 1)))
        );
    }

    #[test]
    fn l2_is_antisymmetric_and_closed() {
        let complex = so3_volume();
        let pairs = so3_canonical_pairs(&complex);
        for p in &pairs {
            for q in &pairs {
                let pq = complex.l2(p, q).expect("l2 output is a pair");
                let qp = complex.l2(q, p).expect("l2 output is a pair");
                assert_eq!(pq.alpha(), &qp.alpha().neg());
                assert_eq!(pq.field(), &qp.field().scale_fn(&PolyScalar::constant(0, rat(-1, 1))));
            }
        }
    }

    #[test]
    fn l1_vanishes_on_pairs_and_squares_to_zero() {
        let complex = so3_volume();
        let pairs = so3_canonical_pairs(&complex);
        let out = complex.l1(&ObsElement::Pair(pairs[0].clone())).unwrap();
        assert_eq!(out, ObsElement::Pair(HamPair::zero(0, 3)));
        // k = 2: Ham^{-1} consists of functions; l1 lifts them to pairs
        // with zero field, and l1 of the lift is the zero pair.
        let f = ObsElement::Form(CeForm::scalar(0, 3, PolyScalar::one(0)));
        let lifted = complex.l1(&f).unwrap();
        match &lifted {
            ObsElement::Pair(p) => assert!(p.field().is_zero()),
            other => panic!("expected a pair, got {other:?}"),
        }
        let twice = complex.l1(&lifted).unwrap();
        assert_eq!(twice, ObsElement::Pair(HamPair::zero(0, 3)));
    }

    #[test]
    fn linfty_relations_hold_exhaustively_for_so3_volume() {
        let complex = so3_volume();
        let pairs = so3_canonical_pairs(&complex);
        let stats = complex.verify_linfty(&pairs).expect("relations hold");
        // m = 2 over 27 ordered triples, m = 3 over 81 ordered 4-tuples.
        assert_eq!(stats.cases.get(&2), Some(&27));
        assert_eq!(stats.cases.get(&3), Some(&81));
    }

    #[test]
    fn leibniz_identity_and_difference_witness_hold_for_so3() {
        let complex = so3_volume();
        let pairs = so3_canonical_pairs(&complex);
        let cases = complex.verify_leibniz(&pairs).expect("left Leibniz identity");
        assert_eq!(cases, 27);
        for p in &pairs {
            for q in &pairs {
                complex
                    .bracket_difference_witness(p, q)
                    .expect("difference is exact with the stated primitive");
            }
        }
    }

    #[test]
    fn zero_cocycle_on_abelian_algebra_gives_the_whole_space() {
        // Abelian 3-dimensional algebra, omega = 0, k = 2: d = 0 and
        // contraction by omega is 0, so every (alpha, X) is a pair:
        // dim CE^1 + dim L = 3 + 3.
        let lr = LieRinehartInstance::lie(3, Vec::new(), Map::new()).unwrap();
        let cocycle = Cocycle::new(&lr, CeForm::zero(0, 3), 2).unwrap();
        let complex = ObservablesComplex::new(&lr, cocycle, None).unwrap();
        assert_eq!(complex.ham0_basis().len(), 6);
    }

    #[test]
    fn non_closed_form_is_rejected_with_witness() {
        // On the solvable algebra [e0, e1] = e1, [e0, e2] = e2 the form
        // e1*^e2* is not closed: d(e1*^e2*) = -2 e0*^e1*^e2*.
        let mut brackets = Map::new();
        brackets.insert((0, 1), vec![rat(0, 1), rat(1, 1), rat(0, 1)]);
        brackets.insert((0, 2), vec![rat(0, 1), rat(0, 1), rat(1, 1)]);
        let lr = LieRinehartInstance::lie(
            3,
            vec!["e0".into(), "e1".into(), "e2".into()],
            brackets,
        )
        .unwrap();
        let err = Cocycle::new(&lr, CeForm::from_word(0, 3, &[1, 2], PolyScalar::one(0)), 1)
            .unwrap_err();
        match err {
            ObservablesError::NotClosed { residual } => {
                assert!(
                    residual.contains("e0*^e1*^e2*"),
                    "witness names the residual: {residual}"
                );
            }
            other => panic!("expected a closedness failure, got {other}"),
        }
        // Degree mismatches are caught before closedness.
        let deg = Cocycle::new(&lr, CeForm::from_word(0, 3, &[0], PolyScalar::one(0)), 2)
            .unwrap_err();
        assert!(matches!(deg, ObservablesError::WrongDegree { .. }));
    }

    #[test]
    fn mismatched_pair_is_rejected_with_witness() {
        let complex = so3_volume();
        // (e0*, e1) is not a pair: i_{e1} omega = -e0*^e2* != -d e0*.
        let err = HamPair::new(
            complex.lr(),
            complex.cocycle(),
            CeForm::from_word(0, 3, &[0], PolyScalar::one(0)),
            LrElement::basis(0, 3, 1),
        )
        .unwrap_err();
        assert!(matches!(err, ObservablesError::NotHamiltonian { .. }));
    }

    #[test]
    fn poly_backend_requires_a_degree_bound() {
        let lr = r5_instance();
        let cocycle = r5_cocycle(&lr);
        let err = ham_pairs(&lr, &cocycle, None).unwrap_err();
        assert!(matches!(err, ObservablesError::MissingBound));
    }

    /// Coordinate fields on a 5-variable polynomial ring, basis
    /// d/dt, d/dx1, d/dx2, d/dy1, d/dy2 (variables in that order).
    fn r5_instance() -> LieRinehartInstance {
        let names = ["t", "x1", "x2", "y1", "y2"];
        let mut anchor = Vec::new();
        for i in 0..5 {
            let mut row = vec![PolyScalar::zero(5); 5];
            row[i] = PolyScalar::one(5);
            anchor.push(row);
        }
        LieRinehartInstance::poly(
            5,
            5,
            names.iter().map(|s| s.to_string()).collect(),
            names.iter().map(|s| format!("d/d{s}")).collect(),
            anchor,
            Map::new(),
        )
        .unwrap()
    }

    /// omega = dt^dx1^dy1 + dt^dx2^dy2 over the 5-variable instance; the
    /// variable order (t, x1, x2, y1, y2) puts the words at (0,1,3) and
    /// (0,2,4).
    fn r5_cocycle(lr: &LieRinehartInstance) -> Cocycle {
        let omega = CeForm::from_word(5, 5, &[0, 1, 3], PolyScalar::one(5))
            .add(&CeForm::from_word(5, 5, &[0, 2, 4], PolyScalar::one(5)));
        Cocycle::new(lr, omega, 2).unwrap()
    }

    #[test]
    fn r5_momentum_pair_lies_in_the_bounded_pair_space() {
        let lr = r5_instance();
        let cocycle = r5_cocycle(&lr);
        let basis = ham_pairs(&lr, &cocycle, Some(2)).expect("bounded solve");
        assert!(!basis.is_empty());
        // The momentum pair (-y1 dt, d/dx1).
        let alpha = CeForm::from_word(5, 5, &[0], -&PolyScalar::var(5, 3));
        let field = LrElement::basis(5, 5, 1);
        let pair = HamPair::new(&lr, &cocycle, alpha, field).expect("momentum pair is Hamiltonian");
        let images: Vec<_> = basis.iter().map(HamPair::coordinates).collect();
        assert!(
            solve_in_span(&images, &pair.coordinates()).is_some(),
            "the momentum pair lies in the degree-2 pair space"
        );
    }

    #[test]
    fn r5_abelian_momentum_map_verifies() {
        let lr = r5_instance();
        let cocycle = r5_cocycle(&lr);
        let complex = ObservablesComplex::new(&lr, cocycle, Some(1)).unwrap();
        let sym = LieRinehartInstance::lie(1, vec!["xi".into()], Map::new()).unwrap();
        let alpha = CeForm::from_word(5, 5, &[0], -&PolyScalar::var(5, 3));
        let field = LrElement::basis(5, 5, 1);
        let pair = HamPair::new(complex.lr(), complex.cocycle(), alpha, field).unwrap();
        let stats =
            check_covariant_momentum(&complex, &sym, &[pair], &[LrElement::basis(5, 5, 1)])
                .expect("the translation momentum map is covariant");
        assert_eq!(stats.generators, 1);
    }

    #[test]
    fn so3_adjoint_momentum_map_verifies_and_corruption_is_caught() {
        // mu(xi_i) = (e_i*, e_i) is a covariant momentum map for the
        // adjoint-type action of so(3) on itself.
        let complex = so3_volume();
        let sym = so3();
        let mu = so3_canonical_pairs(&complex);
        let action: Vec<LrElement> = (0..3).map(|i| LrElement::basis(0, 3, i)).collect();
        let stats = check_covariant_momentum(&complex, &sym, &mu, &action)
            .expect("canonical pairs form a momentum map");
        assert_eq!(stats.bracket_pairs, 9);

        // Flipping one pair's sign breaks the bracket condition with a
        // counterexample naming the offending generators.
        let mut corrupted = mu.clone();
        corrupted[2] = corrupted[2].scale(&rat(-1, 1));
        let action2: Vec<LrElement> = vec![
            action[0].clone(),
            action[1].clone(),
            action[2].scale_fn(&PolyScalar::constant(0, rat(-1, 1))),
        ];
        let err = check_covariant_momentum(&complex, &sym, &corrupted, &action2).unwrap_err();
        match err {
            ObservablesError::Momentum { condition, indices, .. } => {
                assert_eq!(condition, "mu([xi, eta]) = [mu(xi), mu(eta)]");
                assert_eq!(indices.len(), 2);
            }
            other => panic!("expected a momentum failure, got {other}"),
        }
    }

    #[test]
    fn r3_fixture_identities_hold_on_a_small_corpus() {
        let stats = r3_fixture_check(11, 6).expect("volume identities hold");
        assert_eq!(stats.corpus_size, 6);
        assert_eq!(stats.id1_cases, 30);
        assert_eq!(stats.id2_cases, 20 + 64);
        assert_eq!(stats.id3_cases, 15 + 256);
        assert_eq!(stats.linfty.total(), 64 + 256);
    }

    #[test]
    fn lj_beyond_the_carrier_is_zero() {
        let complex = so3_volume();
        let pairs = so3_canonical_pairs(&complex);
        let four = vec![pairs[0].clone(), pairs[1].clone(), pairs[2].clone(), pairs[0].clone()];
        assert!(complex.lj(&four).is_zero());
    }
}
