//! Lie-Rinehart algebras presented by finite tables.
//!
//! An instance is a pair `(A, L)`: a commutative base ring `A` acting on a
//! free `A`-module `L` of finite rank, together with a bracket on `L` and
//! an anchor `L -> Der(A)`, subject to the Leibniz rule
//! `[x, f y] = f [x, y] + rho(x)(f) y` and the Jacobi identity. Two
//! backends share the representation through [`PolyScalar`]:
//!
//! * **lie** — `A = Q` (zero variables), anchor zero: an ordinary
//!   finite-dimensional Lie algebra given by structure constants.
//! * **poly** — `A = Q[x_0, ..., x_{m-1}]`, `L` free with basis acting by
//!   derivations; structure functions are polynomials.
//!
//! The bracket of general elements is determined by the tables through
//!
//! ```text
//! [f b_i, g b_j] = f rho_i(g) b_j - g rho_j(f) b_i + f g [b_i, b_j]
//! ```
//!
//! Loading validates the tables: the Jacobi identity on basis triples
//! (computed with the full bracket, so anchor contributions to structure
//! functions participate) and the anchor being a homomorphism into vector
//! fields. Violations are reported with the offending indices and the
//! exact residual, not just a boolean.

mod poly;

pub use poly::{monomial_basis, PolyScalar};

use crate::exactlin::Rational;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

/// Table validation failures, with exact witnesses.
#[derive(Debug, Error)]
pub enum LieRinehartError {
    #[error("jacobi identity fails on basis triple ({i}, {j}, {k}); residual {residual}")]
    JacobiViolation {
        i: usize,
        j: usize,
        k: usize,
        residual: String,
    },
    #[error("anchor is not a homomorphism on basis pair ({i}, {j}): acting on variable {var}, residual {residual}")]
    AnchorViolation {
        i: usize,
        j: usize,
        var: usize,
        residual: String,
    },
    #[error("leibniz rule fails for basis pair ({i}, {j}) with coefficient {f}")]
    LeibnizViolation { i: usize, j: usize, f: String },
    #[error("malformed table: {0}")]
    MalformedTable(String),
}

/// An element of `L`: coefficients over the module basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LrElement {
    pub coeffs: Vec<PolyScalar>,
}

impl LrElement {
    pub fn zero(vars: usize, rank: usize) -> Self {
        LrElement {
            coeffs: vec![PolyScalar::zero(vars); rank],
        }
    }

    /// `f * b_i` for a single basis element.
    pub fn single(vars: usize, rank: usize, i: usize, f: PolyScalar) -> Self {
        let mut e = LrElement::zero(vars, rank);
        e.coeffs[i] = f;
        e
    }

    /// The basis element `b_i` itself.
    pub fn basis(vars: usize, rank: usize, i: usize) -> Self {
        LrElement::single(vars, rank, i, PolyScalar::one(vars))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(PolyScalar::is_zero)
    }

    pub fn add(&self, other: &LrElement) -> LrElement {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        LrElement { coeffs }
    }

    pub fn sub(&self, other: &LrElement) -> LrElement {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        LrElement { coeffs }
    }

    /// Multiplication by a scalar function.
    pub fn scale_fn(&self, f: &PolyScalar) -> LrElement {
        let coeffs = self.coeffs.iter().map(|c| f * c).collect();
        LrElement { coeffs }
    }

    /// Flattens to sparse Q-coordinates keyed by (basis index, monomial
    /// exponents), the shape the exact solvers consume.
    pub fn coordinates(&self) -> BTreeMap<(usize, Vec<u32>), Rational> {
        let mut out = BTreeMap::new();
        for (i, f) in self.coeffs.iter().enumerate() {
            for (exps, c) in f.terms() {
                out.insert((i, exps.clone()), c.clone());
            }
        }
        out
    }

    pub fn format_with(&self, basis_names: &[String], var_names: &[String]) -> String {
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let name = basis_names
                .get(i)
                .cloned()
                .unwrap_or_else(|| format!("b{i}"));
            parts.push(format!("({})*{name}", c.format_with(var_names)));
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

/// A coordinate ideal `I = (x_j : j in J)` of the polynomial base ring.
/// Membership is monomial-wise: `f` lies in `I` exactly when every term
/// of `f` involves some variable in `J`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoordinateIdeal {
    vars: usize,
    generators: BTreeSet<usize>,
}

impl CoordinateIdeal {
    pub fn new(vars: usize, generators: impl IntoIterator<Item = usize>) -> Self {
        let generators: BTreeSet<usize> = generators.into_iter().collect();
        assert!(
            generators.iter().all(|&j| j < vars),
            "ideal generator index out of range"
        );
        CoordinateIdeal { vars, generators }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn generator_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.generators.iter().copied()
    }

    pub fn is_generator(&self, j: usize) -> bool {
        self.generators.contains(&j)
    }

    pub fn contains(&self, f: &PolyScalar) -> bool {
        f.terms()
            .all(|(exps, _)| self.generators.iter().any(|&j| exps[j] > 0))
    }

    /// Componentwise membership for module elements.
    pub fn contains_element(&self, e: &LrElement) -> bool {
        e.coeffs.iter().all(|c| self.contains(c))
    }
}

/// A Lie-Rinehart algebra presented by bracket and anchor tables over a
/// fixed free-module basis.
#[derive(Debug, Clone)]
pub struct LieRinehartInstance {
    vars: usize,
    rank: usize,
    var_names: Vec<String>,
    basis_names: Vec<String>,
    /// `anchor[i][v]` is the coefficient of `d/dx_v` in `rho(b_i)`.
    anchor: Vec<Vec<PolyScalar>>,
    /// `bracket[(i, j)]` for `i < j`: coefficients of `[b_i, b_j]` over
    /// the basis. Missing pairs bracket to zero.
    bracket: BTreeMap<(usize, usize), Vec<PolyScalar>>,
}

impl LieRinehartInstance {
    /// An ordinary Lie algebra from structure constants (`i < j`).
    /// Validates the tables.
    pub fn lie(
        rank: usize,
        basis_names: Vec<String>,
        brackets: BTreeMap<(usize, usize), Vec<Rational>>,
    ) -> Result<Self, LieRinehartError> {
        let instance = Self::lie_unchecked(rank, basis_names, brackets)?;
        instance.validate()?;
        Ok(instance)
    }

    /// As [`LieRinehartInstance::lie`], skipping validation. Shape errors
    /// are still rejected. Intended for adversarial inputs in tests and
    /// for the loaders, which report validation failures themselves.
    pub fn lie_unchecked(
        rank: usize,
        basis_names: Vec<String>,
        brackets: BTreeMap<(usize, usize), Vec<Rational>>,
    ) -> Result<Self, LieRinehartError> {
        let bracket = brackets
            .into_iter()
            .map(|(k, v)| {
                let coeffs = v
                    .into_iter()
                    .map(|c| PolyScalar::constant(0, c))
                    .collect::<Vec<_>>();
                (k, coeffs)
            })
            .collect();
        Self::poly_unchecked(0, rank, Vec::new(), basis_names, vec![Vec::new(); rank], bracket)
    }

    /// A polynomial-coefficient instance from anchor and bracket tables.
    /// Validates the tables.
    pub fn poly(
        vars: usize,
        rank: usize,
        var_names: Vec<String>,
        basis_names: Vec<String>,
        anchor: Vec<Vec<PolyScalar>>,
        bracket: BTreeMap<(usize, usize), Vec<PolyScalar>>,
    ) -> Result<Self, LieRinehartError> {
        let instance = Self::poly_unchecked(vars, rank, var_names, basis_names, anchor, bracket)?;
        instance.validate()?;
        Ok(instance)
    }

    /// As [`LieRinehartInstance::poly`], skipping validation.
    pub fn poly_unchecked(
        vars: usize,
        rank: usize,
        mut var_names: Vec<String>,
        mut basis_names: Vec<String>,
        anchor: Vec<Vec<PolyScalar>>,
        bracket: BTreeMap<(usize, usize), Vec<PolyScalar>>,
    ) -> Result<Self, LieRinehartError> {
        if anchor.len() != rank {
            return Err(LieRinehartError::MalformedTable(format!(
                "anchor table has {} rows for rank {rank}",
                anchor.len()
            )));
        }
        for (i, row) in anchor.iter().enumerate() {
            if row.len() != vars {
                return Err(LieRinehartError::MalformedTable(format!(
                    "anchor row {i} has {} entries for {vars} variables",
                    row.len()
                )));
            }
            for f in row {
                if f.vars() != vars {
                    return Err(LieRinehartError::MalformedTable(format!(
                        "anchor row {i} uses a polynomial in {} variables",
                        f.vars()
                    )));
                }
            }
        }
        for (&(i, j), coeffs) in &bracket {
            if i >= j || j >= rank {
                return Err(LieRinehartError::MalformedTable(format!(
                    "bracket key ({i}, {j}) is not an ordered pair below rank {rank}"
                )));
            }
            if coeffs.len() != rank {
                return Err(LieRinehartError::MalformedTable(format!(
                    "bracket entry ({i}, {j}) has {} coefficients for rank {rank}",
                    coeffs.len()
                )));
            }
            for f in coeffs {
                if f.vars() != vars {
                    return Err(LieRinehartError::MalformedTable(format!(
                        "bracket entry ({i}, {j}) uses a polynomial in {} variables",
                        f.vars()
                    )));
                }
            }
        }
        while var_names.len() < vars {
            var_names.push(format!("x{}", var_names.len()));
        }
        while basis_names.len() < rank {
            basis_names.push(format!("b{}", basis_names.len()));
        }
        Ok(LieRinehartInstance {
            vars,
            rank,
            var_names,
            basis_names,
            anchor,
            bracket,
        })
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_lie(&self) -> bool {
        self.vars == 0
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    /// Anchor coefficients of `rho(b_i)` as a derivation.
    pub fn anchor_row(&self, i: usize) -> &[PolyScalar] {
        &self.anchor[i]
    }

    /// `rho(b_i)(f)`.
    pub fn anchor_apply(&self, i: usize, f: &PolyScalar) -> PolyScalar {
        let mut out = PolyScalar::zero(self.vars);
        for (v, coeff) in self.anchor[i].iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            out = &out + &(coeff * &f.partial(v));
        }
        out
    }

    /// `rho(x)(f)` for a general element `x`.
    pub fn anchor_of(&self, x: &LrElement, f: &PolyScalar) -> PolyScalar {
        let mut out = PolyScalar::zero(self.vars);
        for (i, c) in x.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            out = &out + &(c * &self.anchor_apply(i, f));
        }
        out
    }

    /// `[b_i, b_j]` from the table, extended antisymmetrically.
    pub fn basis_bracket(&self, i: usize, j: usize) -> LrElement {
        if i == j {
            return LrElement::zero(self.vars, self.rank);
        }
        let (key, flip) = if i < j { ((i, j), false) } else { ((j, i), true) };
        let coeffs = match self.bracket.get(&key) {
            Some(c) => c.clone(),
            None => return LrElement::zero(self.vars, self.rank),
        };
        let coeffs = if flip {
            coeffs.iter().map(|c| -c).collect()
        } else {
            coeffs
        };
        LrElement { coeffs }
    }

    /// The bracket of general elements, expanded by bilinearity and the
    /// Leibniz rule from the tables.
    pub fn bracket(&self, x: &LrElement, y: &LrElement) -> LrElement {
        let mut out = LrElement::zero(self.vars, self.rank);
        for (i, f) in x.coeffs.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            for (j, g) in y.coeffs.iter().enumerate() {
                if g.is_zero() {
                    continue;
                }
                // f rho_i(g) b_j
                out.coeffs[j] = &out.coeffs[j] + &(f * &self.anchor_apply(i, g));
                // - g rho_j(f) b_i
                out.coeffs[i] = &out.coeffs[i] - &(g * &self.anchor_apply(j, f));
                // + f g [b_i, b_j]
                let fg = f * g;
                let table = self.basis_bracket(i, j);
                for (k, c) in table.coeffs.iter().enumerate() {
                    if !c.is_zero() {
                        out.coeffs[k] = &out.coeffs[k] + &(&fg * c);
                    }
                }
            }
        }
        out
    }

    /// Checks the Jacobi identity on every basis triple, using the full
    /// bracket so that anchor action on structure functions participates.
    pub fn validate_jacobi(&self) -> Result<(), LieRinehartError> {
        for i in 0..self.rank {
            for j in (i + 1)..self.rank {
                for k in (j + 1)..self.rank {
                    let bi = LrElement::basis(self.vars, self.rank, i);
                    let bj = LrElement::basis(self.vars, self.rank, j);
                    let bk = LrElement::basis(self.vars, self.rank, k);
                    let residual = self
                        .bracket(&self.bracket(&bi, &bj), &bk)
                        .add(&self.bracket(&self.bracket(&bj, &bk), &bi))
                        .add(&self.bracket(&self.bracket(&bk, &bi), &bj));
                    if !residual.is_zero() {
                        return Err(LieRinehartError::JacobiViolation {
                            i,
                            j,
                            k,
                            residual: residual.format_with(&self.basis_names, &self.var_names),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Checks that the anchor is a homomorphism:
    /// `rho([b_i, b_j]) = [rho(b_i), rho(b_j)]` as derivations, verified on
    /// every coordinate function (which determines a derivation).
    pub fn validate_anchor(&self) -> Result<(), LieRinehartError> {
        for i in 0..self.rank {
            for j in (i + 1)..self.rank {
                let table = self.basis_bracket(i, j);
                for v in 0..self.vars {
                    let xv = PolyScalar::var(self.vars, v);
                    let lhs = self.anchor_of(&table, &xv);
                    let rhs = &self.anchor_apply(i, &self.anchor_apply(j, &xv))
                        - &self.anchor_apply(j, &self.anchor_apply(i, &xv));
                    let residual = &lhs - &rhs;
                    if !residual.is_zero() {
                        return Err(LieRinehartError::AnchorViolation {
                            i,
                            j,
                            var: v,
                            residual: residual.format_with(&self.var_names),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Checks the Leibniz rule `[b_i, f b_j] = f [b_i, b_j] + rho_i(f) b_j`
    /// with each coordinate function as `f`. This holds by construction of
    /// [`LieRinehartInstance::bracket`]; the check guards the expansion
    /// itself against regressions.
    pub fn validate_leibniz(&self) -> Result<(), LieRinehartError> {
        for i in 0..self.rank {
            for j in 0..self.rank {
                for v in 0..self.vars {
                    let f = PolyScalar::var(self.vars, v);
                    let bi = LrElement::basis(self.vars, self.rank, i);
                    let bj = LrElement::basis(self.vars, self.rank, j);
                    let fy = bj.scale_fn(&f);
                    let lhs = self.bracket(&bi, &fy);
                    let rhs = self
                        .bracket(&bi, &bj)
                        .scale_fn(&f)
                        .add(&LrElement::single(
                            self.vars,
                            self.rank,
                            j,
                            self.anchor_apply(i, &f),
                        ));
                    if !lhs.sub(&rhs).is_zero() {
                        return Err(LieRinehartError::LeibnizViolation {
                            i,
                            j,
                            f: f.format_with(&self.var_names),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Full table validation: Jacobi, anchor homomorphism, Leibniz.
    pub fn validate(&self) -> Result<(), LieRinehartError> {
        self.validate_jacobi()?;
        self.validate_anchor()?;
        self.validate_leibniz()?;
        Ok(())
    }
}
