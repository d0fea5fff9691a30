//! Chevalley-Eilenberg forms and the Cartan calculus.
//!
//! A [`CeForm`] is an alternating `A`-multilinear form on the free module
//! of a [`LieRinehartInstance`] with values in `A`, stored like a
//! multivector: strictly increasing basis words with polynomial
//! coefficients. The three operators:
//!
//! * **Differential** `d`:
//!   `(d a)(X_0, ..., X_k) = sum_i (-1)^i rho(X_i)(a(..., no X_i, ...))
//!    + sum_{i<j} (-1)^{i+j} a([X_i, X_j], ..., no X_i, X_j, ...)`.
//! * **Contraction** by a decomposable multivector expands as
//!   `i_{X_1 ^ ... ^ X_k} = i_{X_1} o ... o i_{X_k}` (the rightmost factor
//!   hits the form first), with a single contraction inserting into the
//!   leftmost argument slot: `(i_X a)(...) = a(X, ...)`. Contraction by a
//!   degree-0 multivector is multiplication.
//! * **Lie derivative** via the homotopy formula, per homogeneous
//!   component of `u`: `Lie_u = i_u o d - (-1)^{|u|} d o i_u`.
//!
//! With operator degrees `deg(i_x) = -|x|`, `deg(Lie_x) = 1 - |x|`,
//! `deg(d) = 1` and the graded commutator
//! `[A, B] = A B - (-1)^{deg A deg B} B A`, the calculus satisfies the
//! commutation relations verified by [`verify_cartan_identities`]:
//!
//! ```text
//! Lie_x = [i_x, d]                 Lie_{[x,y]} = [Lie_x, Lie_y]
//! i_{[x,y]} = [Lie_x, i_y]         i_{[x,y]} = (-1)^{|y|+1} [i_x, Lie_y]
//! i_{x^y} = i_x i_y                Lie_{x^y} = i_x Lie_y + (-1)^{|y|} Lie_x i_y
//! d^2 = 0
//! ```
//!
//! where `[x, y]` is the Schouten bracket and `|x|` is the wedge degree.
//! The mixed rules are the Leibniz compatibilities of the Gerstenhaber
//! module `(i, Lie)` with the wedge product; every stated sign has been
//! confirmed by direct computation on both backends (several published
//! variants of the last two differ and fail on a Lie algebra with
//! nonabelian bracket — the forms above are the ones that hold).

use crate::exactlin::Rational;
use crate::graded::{increasing_words, merge_words, sort_word};
use crate::liering::{LieRinehartInstance, LrElement, PolyScalar};
use crate::multivec::{schouten, Multivector};
use thiserror::Error;
use std::collections::BTreeMap;

/// Cartan-relation verification failure with an exact witness.
#[derive(Debug, Error)]
pub enum CartanError {
    #[error("cartan relation '{relation}' fails: {witness}")]
    RelationViolation {
        relation: &'static str,
        witness: String,
    },
}

/// Case counts per verified relation.
#[derive(Debug, Clone, Default)]
pub struct CartanStats {
    pub cases: BTreeMap<&'static str, usize>,
}

impl CartanStats {
    pub fn total(&self) -> usize {
        self.cases.values().sum()
    }
}

/// An alternating form, possibly of mixed degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CeForm {
    vars: usize,
    rank: usize,
    terms: BTreeMap<Vec<usize>, PolyScalar>,
}

impl CeForm {
    pub fn zero(vars: usize, rank: usize) -> Self {
        CeForm {
            vars,
            rank,
            terms: BTreeMap::new(),
        }
    }

    /// A degree-0 form (a function).
    pub fn scalar(vars: usize, rank: usize, f: PolyScalar) -> Self {
        let mut a = CeForm::zero(vars, rank);
        a.add_term(Vec::new(), f);
        a
    }

    /// `f * b^*_{w_1} ^ ... ^ b^*_{w_k}` from an arbitrary-order word.
    pub fn from_word(vars: usize, rank: usize, word: &[usize], f: PolyScalar) -> Self {
        assert!(word.iter().all(|&i| i < rank), "basis index out of range");
        let mut a = CeForm::zero(vars, rank);
        if let Some((sorted, sign)) = sort_word(word) {
            let signed = if sign < 0 { -&f } else { f };
            a.add_term(sorted, signed);
        }
        a
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, word: Vec<usize>, f: PolyScalar) {
        if f.is_zero() {
            return;
        }
        match self.terms.get_mut(&word) {
            Some(cur) => {
                let new = &*cur + &f;
                if new.is_zero() {
                    self.terms.remove(&word);
                } else {
                    *cur = new;
                }
            }
            None => {
                self.terms.insert(word, f);
            }
        }
    }

    pub fn coeff(&self, word: &[usize]) -> PolyScalar {
        self.terms
            .get(word)
            .cloned()
            .unwrap_or_else(|| PolyScalar::zero(self.vars))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &PolyScalar)> {
        self.terms.iter()
    }

    /// Flattens to sparse Q-coordinates keyed by (basis word, monomial
    /// exponents), the shape the exact solvers consume.
    pub fn coordinates(&self) -> BTreeMap<(Vec<usize>, Vec<u32>), Rational> {
        let mut out = BTreeMap::new();
        for (w, f) in &self.terms {
            for (exps, c) in f.terms() {
                out.insert((w.clone(), exps.clone()), c.clone());
            }
        }
        out
    }

    pub fn add(&self, other: &CeForm) -> CeForm {
        assert_eq!((self.vars, self.rank), (other.vars, other.rank));
        let mut out = self.clone();
        for (w, f) in &other.terms {
            out.add_term(w.clone(), f.clone());
        }
        out
    }

    pub fn sub(&self, other: &CeForm) -> CeForm {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> CeForm {
        let terms = self.terms.iter().map(|(w, f)| (w.clone(), -f)).collect();
        CeForm {
            vars: self.vars,
            rank: self.rank,
            terms,
        }
    }

    pub fn scale_fn(&self, f: &PolyScalar) -> CeForm {
        let mut out = CeForm::zero(self.vars, self.rank);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), f * c);
        }
        out
    }

    /// Exterior product of forms.
    pub fn wedge(&self, other: &CeForm) -> CeForm {
        assert_eq!((self.vars, self.rank), (other.vars, other.rank));
        let mut out = CeForm::zero(self.vars, self.rank);
        for (wa, fa) in &self.terms {
            for (wb, fb) in &other.terms {
                if let Some((word, sign)) = merge_words(wa, wb) {
                    let c = fa * fb;
                    out.add_term(word, if sign < 0 { -&c } else { c });
                }
            }
        }
        out
    }

    pub fn homogeneous_part(&self, k: usize) -> CeForm {
        let terms = self
            .terms
            .iter()
            .filter(|(w, _)| w.len() == k)
            .map(|(w, f)| (w.clone(), f.clone()))
            .collect();
        CeForm {
            vars: self.vars,
            rank: self.rank,
            terms,
        }
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut ds: Vec<usize> = self.terms.keys().map(Vec::len).collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    pub fn homogeneous_degree(&self) -> Option<usize> {
        let ds = self.degrees();
        if ds.len() == 1 {
            Some(ds[0])
        } else {
            None
        }
    }

    /// Evaluates the form on module elements; only the part with word
    /// length `args.len()` contributes.
    pub fn eval(&self, args: &[LrElement]) -> PolyScalar {
        let k = args.len();
        let mut out = PolyScalar::zero(self.vars);
        let mut tuple = vec![0usize; k];
        self.eval_rec(args, 0, &mut tuple, &PolyScalar::one(self.vars), &mut out);
        let _ = k;
        out
    }

    fn eval_rec(
        &self,
        args: &[LrElement],
        t: usize,
        tuple: &mut Vec<usize>,
        partial: &PolyScalar,
        out: &mut PolyScalar,
    ) {
        if partial.is_zero() {
            return;
        }
        if t == args.len() {
            if let Some((sorted, sign)) = sort_word(tuple) {
                let c = self.coeff(&sorted);
                if !c.is_zero() {
                    let term = partial * &c;
                    *out = if sign < 0 { &*out - &term } else { &*out + &term };
                }
            }
            return;
        }
        for i in 0..self.rank {
            let f = &args[t].coeffs[i];
            if f.is_zero() {
                continue;
            }
            tuple[t] = i;
            let next = partial * f;
            self.eval_rec(args, t + 1, tuple, &next, out);
        }
    }

    /// The Chevalley-Eilenberg differential.
    pub fn dce(&self, lr: &LieRinehartInstance) -> CeForm {
        assert_eq!((self.vars, self.rank), (lr.vars(), lr.rank()));
        let mut out = CeForm::zero(self.vars, self.rank);
        for k in self.degrees() {
            if k + 1 > self.rank {
                continue;
            }
            let part = self.homogeneous_part(k);
            for w in increasing_words(self.rank, k + 1) {
                let mut total = PolyScalar::zero(self.vars);
                // Anchor term: sum_t (-1)^t rho(b_{w_t})(a(w minus t)).
                for t in 0..w.len() {
                    let mut rest = w.clone();
                    let bt = rest.remove(t);
                    let val = part.coeff(&rest);
                    if val.is_zero() {
                        continue;
                    }
                    let term = lr.anchor_apply(bt, &val);
                    total = if t % 2 == 0 { &total + &term } else { &total - &term };
                }
                // Bracket term:
                // sum_{s<t} (-1)^{s+t} a([b_{w_s}, b_{w_t}], rest).
                for s in 0..w.len() {
                    for t in (s + 1)..w.len() {
                        let bracket = lr.basis_bracket(w[s], w[t]);
                        if bracket.is_zero() {
                            continue;
                        }
                        let mut rest = w.clone();
                        rest.remove(t);
                        rest.remove(s);
                        for (m, c) in bracket.coeffs.iter().enumerate() {
                            if c.is_zero() {
                                continue;
                            }
                            let mut word = Vec::with_capacity(rest.len() + 1);
                            word.push(m);
                            word.extend_from_slice(&rest);
                            let Some((sorted, sign)) = sort_word(&word) else {
                                continue;
                            };
                            let val = part.coeff(&sorted);
                            if val.is_zero() {
                                continue;
                            }
                            let mut term = c * &val;
                            let parity = (s + t) % 2 == 0;
                            let pos = sign > 0;
                            if parity != pos {
                                term = -&term;
                            }
                            total = &total + &term;
                        }
                    }
                }
                out.add_term(w, total);
            }
        }
        out
    }

    /// Contraction by a single basis element: `(i_{b_i} a)(...) = a(b_i, ...)`.
    fn contract_basis(&self, i: usize) -> CeForm {
        let mut out = CeForm::zero(self.vars, self.rank);
        for (w, f) in &self.terms {
            if let Some(pos) = w.iter().position(|&j| j == i) {
                let mut rest = w.clone();
                rest.remove(pos);
                out.add_term(rest, if pos % 2 == 0 { f.clone() } else { -f });
            }
        }
        out
    }

    /// Contraction by a multivector, term by term; a word contracts as
    /// `i_{b_{u_1}} o ... o i_{b_{u_j}}` and a degree-0 term multiplies.
    pub fn contract(&self, u: &Multivector) -> CeForm {
        assert_eq!((self.vars, self.rank), (u.vars(), u.rank()));
        let mut out = CeForm::zero(self.vars, self.rank);
        for (word, f) in u.terms() {
            let mut cur = self.clone();
            for &i in word.iter().rev() {
                cur = cur.contract_basis(i);
            }
            out = out.add(&cur.scale_fn(f));
        }
        out
    }

    /// Lie derivative along a multivector via the homotopy formula,
    /// applied per homogeneous component of `u`.
    pub fn lie_derivative(&self, lr: &LieRinehartInstance, u: &Multivector) -> CeForm {
        let mut out = CeForm::zero(self.vars, self.rank);
        for j in u.degrees() {
            let part = u.homogeneous_part(j);
            let first = self.dce(lr).contract(&part);
            let second = self.contract(&part).dce(lr);
            let term = if j % 2 == 0 {
                first.sub(&second)
            } else {
                first.add(&second)
            };
            out = out.add(&term);
        }
        out
    }

    pub fn format_with(&self, basis_names: &[String], var_names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (w, f) in &self.terms {
            let word = if w.is_empty() {
                "1".to_string()
            } else {
                w.iter()
                    .map(|&i| {
                        let name = basis_names
                            .get(i)
                            .cloned()
                            .unwrap_or_else(|| format!("b{i}"));
                        format!("{name}*")
                    })
                    .collect::<Vec<_>>()
                    .join("^")
            };
            parts.push(format!("({})*{}", f.format_with(var_names), word));
        }
        parts.join(" + ")
    }
}

/// Sampled multivectors: every basis word up to `max_wedge`, with unit
/// coefficient and (when the base ring has variables) scaled by `x_0`,
/// plus `x_1`-scaled single words.
fn multivector_samples(lr: &LieRinehartInstance, max_wedge: usize) -> Vec<Multivector> {
    let mut out = Vec::new();
    for k in 0..=max_wedge.min(lr.rank()) {
        for w in increasing_words(lr.rank(), k) {
            out.push(Multivector::from_word(
                lr.vars(),
                lr.rank(),
                &w,
                PolyScalar::one(lr.vars()),
            ));
            if lr.vars() > 0 {
                out.push(Multivector::from_word(
                    lr.vars(),
                    lr.rank(),
                    &w,
                    PolyScalar::var(lr.vars(), 0),
                ));
            }
            if lr.vars() > 1 && k == 1 {
                out.push(Multivector::from_word(
                    lr.vars(),
                    lr.rank(),
                    &w,
                    PolyScalar::var(lr.vars(), 1),
                ));
            }
        }
    }
    out
}

fn form_samples(lr: &LieRinehartInstance, max_degree: usize) -> Vec<CeForm> {
    let mut out = Vec::new();
    for k in 0..=max_degree.min(lr.rank()) {
        for w in increasing_words(lr.rank(), k) {
            out.push(CeForm::from_word(
                lr.vars(),
                lr.rank(),
                &w,
                PolyScalar::one(lr.vars()),
            ));
            if lr.vars() > 0 {
                out.push(CeForm::from_word(
                    lr.vars(),
                    lr.rank(),
                    &w,
                    PolyScalar::var(lr.vars(), 0),
                ));
            }
        }
    }
    out
}

/// Verifies the seven commutation statements of the module documentation
/// over sampled multivectors (basis words up to `max_wedge`, low-degree
/// coefficients) applied to sampled forms. Returns case counts or the
/// first violation.
pub fn verify_cartan_identities(
    lr: &LieRinehartInstance,
    max_wedge: usize,
) -> Result<CartanStats, CartanError> {
    let xs = multivector_samples(lr, max_wedge);
    let forms = form_samples(lr, lr.rank());
    let mut stats = CartanStats::default();

    let mv_degree = |u: &Multivector| u.homogeneous_degree().unwrap_or(0) as i64;
    let fail = |relation: &'static str, x: &Multivector, y: Option<&Multivector>, a: &CeForm| {
        let names: &[String] = lr.basis_names();
        let vnames: &[String] = lr.var_names();
        let mut witness = format!("x = {}", x.format_with(names, vnames));
        if let Some(y) = y {
            witness.push_str(&format!(", y = {}", y.format_with(names, vnames)));
        }
        witness.push_str(&format!(", form = {}", a.format_with(names, vnames)));
        CartanError::RelationViolation { relation, witness }
    };

    // d^2 = 0 on every sampled form.
    for a in &forms {
        if !a.dce(lr).dce(lr).is_zero() {
            return Err(fail("d^2 = 0", &xs[0], None, a));
        }
        *stats.cases.entry("d^2 = 0").or_default() += 1;
    }

    for x in &xs {
        let dx = mv_degree(x);
        for a in &forms {
            // Lie_x = [i_x, d] = i_x d - (-1)^{|x| * 1} d i_x.
            let lhs = a.lie_derivative(lr, x);
            let t1 = a.dce(lr).contract(x);
            let t2 = a.contract(x).dce(lr);
            let rhs = if dx % 2 == 0 { t1.sub(&t2) } else { t1.add(&t2) };
            if lhs != rhs {
                return Err(fail("Lie_x = [i_x, d]", x, None, a));
            }
            *stats.cases.entry("Lie_x = [i_x, d]").or_default() += 1;
        }
    }

    for x in &xs {
        let dx = mv_degree(x);
        for y in &xs {
            let dy = mv_degree(y);
            let xy = schouten(lr, x, y);
            let wedge = x.wedge(y);
            for a in &forms {
                // Lie_{[x,y]} = [Lie_x, Lie_y]; operator degrees 1 - |x|, 1 - |y|.
                let lhs = a.lie_derivative(lr, &xy);
                let t1 = a.lie_derivative(lr, y).lie_derivative_ref(lr, x);
                let t2 = a.lie_derivative(lr, x).lie_derivative_ref(lr, y);
                let exp = (1 - dx) * (1 - dy);
                let rhs = if exp % 2 == 0 { t1.sub(&t2) } else { t1.add(&t2) };
                if lhs != rhs {
                    return Err(fail("Lie_{[x,y]} = [Lie_x, Lie_y]", x, Some(y), a));
                }
                *stats
                    .cases
                    .entry("Lie_{[x,y]} = [Lie_x, Lie_y]")
                    .or_default() += 1;

                // i_{[x,y]} = [Lie_x, i_y]; degrees 1 - |x|, -|y|.
                let lhs = a.contract(&xy);
                let t1 = a.contract(y).lie_derivative_ref(lr, x);
                let t2 = a.lie_derivative(lr, x).contract(y);
                let exp = (1 - dx) * dy;
                let rhs = if exp % 2 == 0 { t1.sub(&t2) } else { t1.add(&t2) };
                if lhs != rhs {
                    return Err(fail("i_{[x,y]} = [Lie_x, i_y]", x, Some(y), a));
                }
                *stats.cases.entry("i_{[x,y]} = [Lie_x, i_y]").or_default() += 1;

                // i_{[x,y]} = (-1)^{|y|+1} [i_x, Lie_y]; degrees -|x|, 1 - |y|.
                let lhs = a.contract(&xy);
                let t1 = a.lie_derivative(lr, y).contract(x);
                let t2 = a.contract(x).lie_derivative_ref(lr, y);
                let exp = dx * (1 - dy);
                let inner = if exp % 2 == 0 { t1.sub(&t2) } else { t1.add(&t2) };
                let rhs = if dy % 2 == 0 { inner.neg() } else { inner };
                if lhs != rhs {
                    return Err(fail("i_{[x,y]} = (-1)^{|y|+1} [i_x, Lie_y]", x, Some(y), a));
                }
                *stats
                    .cases
                    .entry("i_{[x,y]} = (-1)^{|y|+1} [i_x, Lie_y]")
                    .or_default() += 1;

                // i_{x^y} = i_x i_y.
                let lhs = a.contract(&wedge);
                let rhs = a.contract(y).contract(x);
                if lhs != rhs {
                    return Err(fail("i_{x^y} = i_x i_y", x, Some(y), a));
                }
                *stats.cases.entry("i_{x^y} = i_x i_y").or_default() += 1;

                // Lie_{x^y} = i_x Lie_y + (-1)^{|y|} Lie_x i_y.
                let lhs = a.lie_derivative(lr, &wedge);
                let t1 = a.lie_derivative(lr, y).contract(x);
                let t2 = a.contract(y).lie_derivative_ref(lr, x);
                let rhs = if dy % 2 == 0 { t1.add(&t2) } else { t1.sub(&t2) };
                if lhs != rhs {
                    return Err(fail(
                        "Lie_{x^y} = i_x Lie_y + (-1)^{|y|} Lie_x i_y",
                        x,
                        Some(y),
                        a,
                    ));
                }
                *stats
                    .cases
                    .entry("Lie_{x^y} = i_x Lie_y + (-1)^{|y|} Lie_x i_y")
                    .or_default() += 1;
            }
        }
    }

    Ok(stats)
}

impl CeForm {
    /// `self.lie_derivative` with argument order suiting method chains.
    fn lie_derivative_ref(&self, lr: &LieRinehartInstance, u: &Multivector) -> CeForm {
        self.lie_derivative(lr, u)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rat;
    use std::collections::BTreeMap;

    fn so3() -> LieRinehartInstance {
        let mut brackets = BTreeMap::new();
        brackets.insert((0, 1), vec![rat(0, 1), rat(0, 1), rat(1, 1)]);
        brackets.insert((1, 2), vec![rat(1, 1), rat(0, 1), rat(0, 1)]);
        brackets.insert((0, 2), vec![rat(0, 1), rat(-1, 1), rat(0, 1)]);
        LieRinehartInstance::lie(3, Vec::new(), brackets).unwrap()
    }

    fn plane() -> LieRinehartInstance {
        LieRinehartInstance::poly(
            2,
            2,
            vec!["x".into(), "y".into()],
            vec!["dx".into(), "dy".into()],
            vec![
                vec![PolyScalar::one(2), PolyScalar::zero(2)],
                vec![PolyScalar::zero(2), PolyScalar::one(2)],
            ],
            BTreeMap::new(),
        )
        .unwrap()
    }

    #[test]
    fn differential_of_a_function_is_the_anchor_gradient() {
        let lr = plane();
        let x = PolyScalar::var(2, 0);
        let y = PolyScalar::var(2, 1);
        let f = &(&x * &x) * &y;
        let df = CeForm::scalar(2, 2, f).dce(&lr);
        assert_eq!(df.coeff(&[0]), (&x * &y).scale(&rat(2, 1)));
        assert_eq!(df.coeff(&[1]), &x * &x);
    }

    #[test]
    fn so3_structure_equations() {
        // d e2^* = -e0^* ^ e1^*, and cyclically.
        let lr = so3();
        let one = PolyScalar::one(0);
        let d2 = CeForm::from_word(0, 3, &[2], one.clone()).dce(&lr);
        assert_eq!(d2.coeff(&[0, 1]), PolyScalar::constant(0, rat(-1, 1)));
        let d0 = CeForm::from_word(0, 3, &[0], one.clone()).dce(&lr);
        assert_eq!(d0.coeff(&[1, 2]), PolyScalar::constant(0, rat(-1, 1)));
        // The volume form is closed (top degree).
        let vol = CeForm::from_word(0, 3, &[0, 1, 2], one);
        assert!(vol.dce(&lr).is_zero());
    }

    /// Independent de Rham oracle: on the coordinate-field instance the
    /// differential must be `d(f dx^w) = sum_v (df/dx_v) dx_v ^ dx^w`,
    /// computed here directly from partial derivatives.
    #[test]
    fn de_rham_oracle_on_coordinate_fields() {
        let lr = plane();
        let x = PolyScalar::var(2, 0);
        let y = PolyScalar::var(2, 1);
        let coeffs = vec![
            PolyScalar::one(2),
            &x * &y,
            &(&x * &x) - &y,
            (&y * &y).scale(&rat(-3, 5)),
        ];
        let words: Vec<Vec<usize>> = vec![vec![], vec![0], vec![1], vec![0, 1]];
        for f in &coeffs {
            for w in &words {
                let form = CeForm::from_word(2, 2, w, f.clone());
                let got = form.dce(&lr);
                let mut expect = CeForm::zero(2, 2);
                for v in 0..2 {
                    let dv = CeForm::from_word(2, 2, &[v], f.partial(v));
                    expect = expect.add(&dv.wedge(&CeForm::from_word(
                        2,
                        2,
                        w,
                        PolyScalar::one(2),
                    )));
                }
                assert_eq!(got, expect, "word {w:?} coefficient {f}");
            }
        }
    }

    #[test]
    fn contraction_is_iterated_with_leftmost_insertion() {
        // i_{e0 ^ e1 ^ e2} (e0* ^ e1* ^ e2*) = -1, frozen by hand.
        let one = PolyScalar::one(0);
        let vol = CeForm::from_word(0, 3, &[0, 1, 2], one.clone());
        let top = Multivector::from_word(0, 3, &[0, 1, 2], one.clone());
        let got = vol.contract(&top);
        assert_eq!(got.coeff(&[]), PolyScalar::constant(0, rat(-1, 1)));
        // Single contraction: i_{e1} vol = -e0* ^ e2*.
        let e1 = Multivector::from_word(0, 3, &[1], one);
        let got = vol.contract(&e1);
        assert_eq!(got.coeff(&[0, 2]), PolyScalar::constant(0, rat(-1, 1)));
    }

    #[test]
    fn evaluation_is_alternating_and_multilinear() {
        let lr = plane();
        let x = PolyScalar::var(2, 0);
        let a = CeForm::from_word(2, 2, &[0, 1], x.clone());
        let u = LrElement::single(2, 2, 0, PolyScalar::var(2, 1));
        let v = LrElement::basis(2, 2, 1);
        // a(u, v) = x * y.
        assert_eq!(a.eval(&[u.clone(), v.clone()]), &x * &PolyScalar::var(2, 1));
        // Alternating: a(u, u) = 0, a(v, u) = -a(u, v).
        assert!(a.eval(&[u.clone(), u.clone()]).is_zero());
        assert_eq!(a.eval(&[v.clone(), u.clone()]), -&a.eval(&[u, v]));
        let _ = lr;
    }

    #[test]
    fn lie_derivative_on_functions_is_the_anchor() {
        let lr = plane();
        let x = PolyScalar::var(2, 0);
        let f = CeForm::scalar(2, 2, &x * &x);
        let dx = Multivector::from_word(2, 2, &[0], PolyScalar::one(2));
        let got = f.lie_derivative(&lr, &dx);
        assert_eq!(got, CeForm::scalar(2, 2, x.scale(&rat(2, 1))));
    }

    #[test]
    fn cartan_identities_hold_for_so3() {
        let stats = verify_cartan_identities(&so3(), 2).expect("relations hold");
        assert!(stats.total() > 0);
    }

    #[test]
    fn cartan_identities_hold_for_plane_fields() {
        verify_cartan_identities(&plane(), 2).expect("relations hold");
    }
}
