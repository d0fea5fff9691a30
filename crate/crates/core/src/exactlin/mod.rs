//! Exact linear algebra over Q.
//!
//! The substrate for every other module: sparse matrices with
//! arbitrary-precision rational entries, reduced row echelon form as the
//! canonical normal form, and subspaces stored by their canonical RREF
//! basis so that subspace equality is syntactic equality.
//!
//! Conventions:
//!
//! * matrices act on column vectors: an `m x n` matrix maps Q^n -> Q^m;
//! * subspace bases are stored as rows;
//! * `solve` returns the particular solution with all free variables set
//!   to zero, making solutions deterministic and reproducible.

mod matrix;
mod rational;
mod subspace;

pub use matrix::{ExactMatrix, RrefResult};
pub use rational::{format_rational, parse_rational, rat, Rational};
pub use subspace::{QuotientBasis, Subspace};

use num::Zero;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

/// Errors produced by the exact linear algebra layer.
#[derive(Debug, Error)]
pub enum ExactLinError {
    /// A rational literal was not of the form `p` or `p/q` with `q != 0`.
    #[error("malformed rational literal {literal:?}: {reason}")]
    MalformedRational { literal: String, reason: String },
    /// Two objects with incompatible dimensions were combined.
    #[error("dimension mismatch: {context} (left {left}, right {right})")]
    DimensionMismatch {
        context: &'static str,
        left: usize,
        right: usize,
    },
    /// A subspace operation was given a vector or subspace from the wrong
    /// ambient space.
    #[error("ambient dimension mismatch: expected {expected}, got {got}")]
    AmbientMismatch { expected: usize, got: usize },
    /// `quotient_basis` was asked to quotient by a set that is not contained
    /// in the enclosing space.
    #[error("subspace is not contained in the enclosing space (offending basis row {row})")]
    NotContained { row: usize },
}

/// Assembles the matrix of a linear map described by generator images in a
/// sparsely keyed target space. Column `c` holds `images[c]`; rows are
/// indexed by the sorted union of all keys (returned alongside). Keys
/// absent from an image are zero.
pub fn image_matrix<K: Ord + Clone>(images: &[BTreeMap<K, Rational>]) -> (ExactMatrix, Vec<K>) {
    let mut keys: BTreeSet<&K> = BTreeSet::new();
    for image in images {
        keys.extend(image.keys());
    }
    let keys: Vec<K> = keys.into_iter().cloned().collect();
    let index: BTreeMap<&K, usize> = keys.iter().enumerate().map(|(r, k)| (k, r)).collect();
    let mut m = ExactMatrix::zero(keys.len(), images.len());
    for (c, image) in images.iter().enumerate() {
        for (k, v) in image {
            m.set(index[k], c, v.clone());
        }
    }
    (m, keys)
}

/// Kernel of the map sending the `c`-th generator to `images[c]`: the
/// canonical basis of coefficient vectors `(a_0, ..., a_{n-1})` with
/// `sum_c a_c images[c] = 0`. The ambient dimension of the result is the
/// number of generators.
pub fn kernel_of_images<K: Ord + Clone>(images: &[BTreeMap<K, Rational>]) -> Subspace {
    let (m, _) = image_matrix(images);
    m.nullspace()
}

/// Expresses `target` in the span of `images`: coefficients `a` with
/// `sum_c a_c images[c] = target`, free coefficients zeroed, or `None` if
/// `target` is outside the span. The key union includes `target`'s keys,
/// so targets sticking out of the span are detected, not truncated.
pub fn solve_in_span<K: Ord + Clone>(
    images: &[BTreeMap<K, Rational>],
    target: &BTreeMap<K, Rational>,
) -> Option<Vec<Rational>> {
    let mut keys: BTreeSet<&K> = BTreeSet::new();
    for image in images {
        keys.extend(image.keys());
    }
    keys.extend(target.keys());
    let keys: Vec<&K> = keys.into_iter().collect();
    let index: BTreeMap<&K, usize> = keys.iter().enumerate().map(|(r, &k)| (k, r)).collect();
    let mut m = ExactMatrix::zero(keys.len(), images.len());
    for (c, image) in images.iter().enumerate() {
        for (k, v) in image {
            m.set(index[&k], c, v.clone());
        }
    }
    let mut rhs = vec![Rational::zero(); keys.len()];
    for (k, v) in target {
        rhs[index[&k]] = v.clone();
    }
    m.solve(&rhs)
}
