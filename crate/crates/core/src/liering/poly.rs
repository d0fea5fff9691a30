//! Multivariate polynomials over Q with exact arithmetic.
//!
//! [`PolyScalar`] is the coefficient ring shared by both backends: with
//! `vars = 0` it degenerates to plain rationals (the Lie-algebra case),
//! with `vars = m` it is `Q[x_0, ..., x_{m-1}]`. Terms are stored sparsely
//! keyed by exponent vector; zero coefficients are never stored, so
//! structural equality is semantic equality.

use crate::exactlin::{format_rational, Rational};
use num::{One, Zero};
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

/// A sparse polynomial in a fixed number of variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyScalar {
    vars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl PolyScalar {
    pub fn zero(vars: usize) -> Self {
        PolyScalar {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: usize) -> Self {
        PolyScalar::constant(vars, Rational::one())
    }

    pub fn constant(vars: usize, c: Rational) -> Self {
        let mut p = PolyScalar::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; vars], c);
        }
        p
    }

    /// The coordinate function `x_i`.
    pub fn var(vars: usize, i: usize) -> Self {
        assert!(i < vars, "variable index out of range");
        let mut exps = vec![0u32; vars];
        exps[i] = 1;
        PolyScalar::monomial(vars, exps, Rational::one())
    }

    pub fn monomial(vars: usize, exps: Vec<u32>, c: Rational) -> Self {
        assert_eq!(exps.len(), vars, "exponent vector length differs");
        let mut p = PolyScalar::zero(vars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    /// The coefficient of the constant monomial.
    pub fn constant_part(&self) -> Rational {
        self.coeff(&vec![0; self.vars])
    }

    /// For a constant polynomial, its value; `None` otherwise.
    pub fn to_rational(&self) -> Option<Rational> {
        if self.is_constant() {
            Some(self.constant_part())
        } else {
            None
        }
    }

    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Total degree, or `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return PolyScalar::zero(self.vars);
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, v)| (e.clone(), v * c))
            .collect();
        PolyScalar {
            vars: self.vars,
            terms,
        }
    }

    fn add_term(&mut self, exps: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(cur) => {
                *cur += c;
                if cur.is_zero() {
                    self.terms.remove(&exps);
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = PolyScalar::one(self.vars);
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Partial derivative with respect to `x_i`.
    pub fn partial(&self, i: usize) -> Self {
        assert!(i < self.vars, "variable index out of range");
        let mut out = PolyScalar::zero(self.vars);
        for (exps, c) in &self.terms {
            if exps[i] == 0 {
                continue;
            }
            let mut e = exps.clone();
            e[i] -= 1;
            out.add_term(e, c * Rational::from_integer(exps[i].into()));
        }
        out
    }

    /// Terms sorted by total degree, then lexicographically by exponent
    /// vector — the canonical presentation order.
    pub fn sorted_terms(&self) -> Vec<(Vec<u32>, Rational)> {
        let mut terms: Vec<_> = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        terms.sort_by_key(|(e, _)| (e.iter().sum::<u32>(), e.clone()));
        terms
    }

    /// Renders with the given variable names (defaults to `x{i}` when the
    /// slice is too short).
    pub fn format_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (exps, c)) in self.sorted_terms().iter().enumerate() {
            let mut factors = Vec::new();
            for (i, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let name = names
                    .get(i)
                    .cloned()
                    .unwrap_or_else(|| format!("x{i}"));
                if e == 1 {
                    factors.push(name);
                } else {
                    factors.push(format!("{name}^{e}"));
                }
            }
            let coeff = format_rational(c);
            let body = if factors.is_empty() {
                coeff
            } else if c.is_one() {
                factors.join("*")
            } else if (-c.clone()).is_one() {
                format!("-{}", factors.join("*"))
            } else {
                format!("{}*{}", coeff, factors.join("*"))
            };
            if k == 0 {
                out.push_str(&body);
            } else if let Some(stripped) = body.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(stripped);
            } else {
                out.push_str(" + ");
                out.push_str(&body);
            }
        }
        out
    }

    /// Coordinates of this polynomial over an explicit monomial window.
    /// `None` when a term's monomial falls outside the window.
    pub fn coords_in_window(&self, window: &[Vec<u32>]) -> Option<Vec<Rational>> {
        let pos: BTreeMap<&Vec<u32>, usize> =
            window.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut out = vec![Rational::zero(); window.len()];
        for (exps, c) in &self.terms {
            let &i = pos.get(exps)?;
            out[i] = c.clone();
        }
        Some(out)
    }

    /// Rebuilds a polynomial from coordinates over a monomial window.
    pub fn from_coords(vars: usize, window: &[Vec<u32>], coords: &[Rational]) -> Self {
        assert_eq!(window.len(), coords.len(), "window length differs");
        let mut out = PolyScalar::zero(vars);
        for (m, c) in window.iter().zip(coords) {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl std::fmt::Display for PolyScalar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.format_with(&[]))
    }
}

impl Add for &PolyScalar {
    type Output = PolyScalar;
    fn add(self, rhs: &PolyScalar) -> PolyScalar {
        assert_eq!(self.vars, rhs.vars, "variable count differs");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &PolyScalar {
    type Output = PolyScalar;
    fn sub(self, rhs: &PolyScalar) -> PolyScalar {
        self + &(-rhs)
    }
}

impl Neg for &PolyScalar {
    type Output = PolyScalar;
    fn neg(self) -> PolyScalar {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), -c.clone()))
            .collect();
        PolyScalar {
            vars: self.vars,
            terms,
        }
    }
}

impl Mul for &PolyScalar {
    type Output = PolyScalar;
    fn mul(self, rhs: &PolyScalar) -> PolyScalar {
        assert_eq!(self.vars, rhs.vars, "variable count differs");
        let mut out = PolyScalar::zero(self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let exps: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(exps, ca * cb);
            }
        }
        out
    }
}

/// All exponent vectors in `vars` variables of total degree at most
/// `max_deg`, ordered by total degree then lexicographically. With
/// `vars = 0` this is the single empty monomial.
pub fn monomial_basis(vars: usize, max_deg: u32) -> Vec<Vec<u32>> {
    fn fill(vars: usize, deg_left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == vars {
            out.push(prefix.clone());
            return;
        }
        for e in 0..=deg_left {
            prefix.push(e);
            fill(vars, deg_left - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    for d in 0..=max_deg {
        let mut at_degree = Vec::new();
        fill(vars, d, &mut Vec::new(), &mut at_degree);
        at_degree.retain(|e| e.iter().sum::<u32>() == d);
        at_degree.sort();
        out.extend(at_degree);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rat;

    fn x() -> PolyScalar {
        PolyScalar::var(2, 0)
    }
    fn y() -> PolyScalar {
        PolyScalar::var(2, 1)
    }

    #[test]
    fn binomial_square() {
        let s = &x() + &y();
        let sq = &s * &s;
        let expect = &(&(&x() * &x()) + &(&x() * &y()).scale(&rat(2, 1))) + &(&y() * &y());
        assert_eq!(sq, expect);
        assert_eq!(sq.total_degree(), Some(2));
        assert_eq!(sq.term_count(), 3);
    }

    #[test]
    fn partial_derivative_leibniz() {
        let f = &(&x() * &x()) * &y(); // x^2 y
        let g = &y() + &PolyScalar::one(2);
        let prod = &f * &g;
        let lhs = prod.partial(1);
        let rhs = &(&f.partial(1) * &g) + &(&f * &g.partial(1));
        assert_eq!(lhs, rhs);
        // d/dx (x^2 y) = 2 x y
        assert_eq!(f.partial(0), (&x() * &y()).scale(&rat(2, 1)));
    }

    #[test]
    fn zero_variable_ring_is_the_rationals() {
        let a = PolyScalar::constant(0, rat(3, 2));
        let b = PolyScalar::constant(0, rat(-1, 2));
        assert_eq!((&a + &b).to_rational(), Some(rat(1, 1)));
        assert_eq!((&a * &b).to_rational(), Some(rat(-3, 4)));
        assert_eq!(monomial_basis(0, 5), vec![Vec::<u32>::new()]);
    }

    #[test]
    fn display_is_canonical() {
        let p = &(&y().scale(&rat(-1, 2)) + &(&x() * &x())) + &PolyScalar::one(2);
        assert_eq!(p.to_string(), "1 - 1/2*x1 + x0^2");
        let names = vec!["x".to_string(), "y".to_string()];
        assert_eq!(p.format_with(&names), "1 - 1/2*y + x^2");
        assert_eq!(PolyScalar::zero(2).to_string(), "0");
    }

    #[test]
    fn monomial_basis_counts() {
        // dim Q[x,y]_{<= d} = C(d+2, 2)
        assert_eq!(monomial_basis(2, 3).len(), 10);
        assert_eq!(monomial_basis(3, 2).len(), 10);
        assert_eq!(monomial_basis(1, 4).len(), 5);
        // Ordered by total degree first.
        let basis = monomial_basis(2, 2);
        assert_eq!(basis[0], vec![0, 0]);
        let degs: Vec<u32> = basis.iter().map(|e| e.iter().sum()).collect();
        let mut sorted = degs.clone();
        sorted.sort();
        assert_eq!(degs, sorted);
    }

    #[test]
    fn window_coordinates_round_trip() {
        let window = monomial_basis(2, 2);
        let p = &(&x() * &y()).scale(&rat(5, 3)) - &PolyScalar::one(2);
        let coords = p.coords_in_window(&window).unwrap();
        let back = PolyScalar::from_coords(2, &window, &coords);
        assert_eq!(back, p);
        // A cubic term falls outside the quadratic window.
        let q = &(&x() * &x()) * &x();
        assert!(q.coords_in_window(&window).is_none());
    }
}
