//! Z-graded vector spaces over Q and the Koszul sign oracle.
//!
//! This module is the single authority for sign conventions. Every other
//! module obtains signs from [`koszul_sign`] (or the word helpers built on
//! it) rather than computing ad-hoc parities:
//!
//! * **Pure Koszul mode** (`SignMode::Koszul`): moving an item of degree `p`
//!   past an item of degree `q` costs `(-1)^(p*q)`. Reversing `j` items of
//!   degree 1 therefore costs `(-1)^(j(j-1)/2)`; for `j = 3` the sign is
//!   `-1`.
//! * **Exterior mode** (`SignMode::Exterior`): the pure Koszul sign times
//!   the ordinary permutation sign. This is the convention in which a
//!   reversal of `j` degree-1 items costs `(-1)^(j(j-1))` = `+1` — the form
//!   that absorbs the permutation parity into the Koszul bookkeeping.
//!
//! Words of strictly increasing basis indices (used by multivectors and
//! alternating forms) are sorted with the pure Koszul sign at degree 1,
//! i.e. the classical exterior-algebra sign.
//!
//! The interior-product convention fixed here and used by the calculus
//! modules: contraction by a decomposable multivector expands as
//! `i_{X1 ^ ... ^ Xk} = i_{X1} o ... o i_{Xk}`, with single contraction
//! inserting into the leftmost argument slot.

use crate::exactlin::{ExactMatrix, Rational};
use num::Zero;
use std::collections::BTreeMap;

/// Selects what [`koszul_sign`] counts per inversion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignMode {
    /// `(-1)^(p*q)` per crossing of items of degrees `p`, `q`.
    Koszul,
    /// The Koszul sign times the plain permutation sign: an extra `-1`
    /// per crossing.
    Exterior,
}

/// The sign of reordering homogeneous items.
///
/// `perm` describes the reordered sequence: slot `t` of the output holds
/// input item `perm[t]`. `degrees[i]` is the degree of input item `i`.
/// Panics if `perm` is not a permutation of `0..degrees.len()`.
pub fn koszul_sign(perm: &[usize], degrees: &[i64], mode: SignMode) -> i64 {
    assert_eq!(perm.len(), degrees.len(), "permutation length differs");
    let mut seen = vec![false; perm.len()];
    for &p in perm {
        assert!(p < perm.len() && !seen[p], "not a permutation");
        seen[p] = true;
    }
    let mut sign = 1i64;
    for t in 1..perm.len() {
        for s in 0..t {
            if perm[s] > perm[t] {
                let exponent = degrees[perm[s]] * degrees[perm[t]];
                if exponent % 2 != 0 {
                    sign = -sign;
                }
                if mode == SignMode::Exterior {
                    sign = -sign;
                }
            }
        }
    }
    sign
}

/// Sorts a word of distinct basis indices into strictly increasing order,
/// returning the exterior sign of the sort (degree-1 Koszul sign). Returns
/// `None` when the word has a repeated index, i.e. the wedge vanishes.
pub fn sort_word(word: &[usize]) -> Option<(Vec<usize>, i64)> {
    let mut idx: Vec<usize> = (0..word.len()).collect();
    idx.sort_by_key(|&i| word[i]);
    for pair in idx.windows(2) {
        if word[pair[0]] == word[pair[1]] {
            return None;
        }
    }
    let degrees = vec![1i64; word.len()];
    let sign = koszul_sign(&idx, &degrees, SignMode::Koszul);
    Some((idx.iter().map(|&i| word[i]).collect(), sign))
}

/// Merges two strictly increasing words into one, with the exterior sign of
/// interleaving. `None` when they share an index.
pub fn merge_words(a: &[usize], b: &[usize]) -> Option<(Vec<usize>, i64)> {
    let mut joined: Vec<usize> = Vec::with_capacity(a.len() + b.len());
    joined.extend_from_slice(a);
    joined.extend_from_slice(b);
    sort_word(&joined)
}

/// Removes `index` from a strictly increasing word, returning the position
/// it occupied, or `None` when absent.
pub fn remove_index(word: &[usize], index: usize) -> Option<(Vec<usize>, usize)> {
    let pos = word.iter().position(|&i| i == index)?;
    let mut rest = word.to_vec();
    rest.remove(pos);
    Some((rest, pos))
}

/// All strictly increasing words of length `k` over `0..n`, in
/// lexicographic order.
pub fn increasing_words(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 0 {
            out.push(prefix.clone());
            return;
        }
        for i in start..n {
            prefix.push(i);
            go(i + 1, n, k - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

/// A finite-dimensional Z-graded vector space over Q, with labelled basis
/// vectors in each degree. Degrees with no component are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedSpace {
    components: BTreeMap<i64, Vec<String>>,
}

impl GradedSpace {
    pub fn new() -> Self {
        GradedSpace {
            components: BTreeMap::new(),
        }
    }

    /// Adds (or replaces) the component in `degree` with the given basis
    /// labels. Empty label lists are dropped.
    pub fn with_component(mut self, degree: i64, labels: Vec<String>) -> Self {
        if labels.is_empty() {
            self.components.remove(&degree);
        } else {
            self.components.insert(degree, labels);
        }
        self
    }

    /// A single component of dimension `dim` in `degree` with generated
    /// labels.
    pub fn concentrated(degree: i64, dim: usize, prefix: &str) -> Self {
        let labels = (0..dim).map(|i| format!("{prefix}{i}")).collect();
        GradedSpace::new().with_component(degree, labels)
    }

    pub fn dim(&self, degree: i64) -> usize {
        self.components.get(&degree).map_or(0, Vec::len)
    }

    pub fn total_dim(&self) -> usize {
        self.components.values().map(Vec::len).sum()
    }

    /// Degrees with a nonzero component, ascending.
    pub fn degrees(&self) -> Vec<i64> {
        self.components.keys().copied().collect()
    }

    pub fn labels(&self, degree: i64) -> &[String] {
        self.components.get(&degree).map_or(&[], Vec::as_slice)
    }

    /// Degree shift: `shift(s)` has component `V^{d+s}` in degree `d`.
    /// A space concentrated in degree 0 lands in degree `-s`.
    pub fn shift(&self, s: i64) -> GradedSpace {
        let components = self
            .components
            .iter()
            .map(|(d, l)| (d - s, l.clone()))
            .collect();
        GradedSpace { components }
    }

    /// Grading reversal: component `V^{-d}` in degree `d`.
    pub fn reverse(&self) -> GradedSpace {
        let components = self
            .components
            .iter()
            .map(|(d, l)| (-d, l.clone()))
            .collect();
        GradedSpace { components }
    }

    /// Graded tensor product, with basis `a (x) b` ordered first by the
    /// degree of the left factor, then by left index, then right index.
    pub fn tensor(&self, other: &GradedSpace) -> GradedSpace {
        let mut components: BTreeMap<i64, Vec<String>> = BTreeMap::new();
        for (p, la) in &self.components {
            for (q, lb) in &other.components {
                let entry = components.entry(p + q).or_default();
                for a in la {
                    for b in lb {
                        entry.push(format!("{a}(x){b}"));
                    }
                }
            }
        }
        GradedSpace { components }
    }

    /// Flat index of the pair `(p, i) (x) (q, j)` inside the tensor
    /// component of degree `p + q`, matching the basis order of
    /// [`GradedSpace::tensor`].
    pub fn tensor_index(
        &self,
        other: &GradedSpace,
        p: i64,
        i: usize,
        q: i64,
        j: usize,
    ) -> (i64, usize) {
        assert!(i < self.dim(p) && j < other.dim(q), "index out of range");
        let mut offset = 0;
        for (pp, la) in &self.components {
            let qq = p + q - pp;
            let other_dim = other.dim(qq);
            if *pp == p {
                offset += i * other_dim + j;
                break;
            }
            if *pp < p {
                offset += la.len() * other_dim;
            }
        }
        (p + q, offset)
    }

    /// An element of this space from explicit coordinates.
    pub fn element(&self, coords: &[((i64, usize), Rational)]) -> GradedElement {
        let mut e = GradedElement::zero();
        for ((d, i), v) in coords {
            assert!(*i < self.dim(*d), "coordinate outside component");
            e.add_to(*d, *i, v.clone());
        }
        e
    }
}

impl Default for GradedSpace {
    fn default() -> Self {
        GradedSpace::new()
    }
}

/// An element of a graded space: a sparse map from `(degree, index)` to a
/// nonzero coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GradedElement {
    coords: BTreeMap<(i64, usize), Rational>,
}

impl GradedElement {
    pub fn zero() -> Self {
        GradedElement::default()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coord(&self, degree: i64, index: usize) -> Rational {
        self.coords
            .get(&(degree, index))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn add_to(&mut self, degree: i64, index: usize, v: Rational) {
        let cur = self.coord(degree, index);
        let new = cur + v;
        if new.is_zero() {
            self.coords.remove(&(degree, index));
        } else {
            self.coords.insert((degree, index), new);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(i64, usize), &Rational)> {
        self.coords.iter()
    }

    /// Dense coordinates of the component in `degree` within a space.
    pub fn component(&self, space: &GradedSpace, degree: i64) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); space.dim(degree)];
        for ((d, i), v) in &self.coords {
            if *d == degree {
                out[*i] = v.clone();
            }
        }
        out
    }
}

/// A degree-homogeneous linear map between graded spaces, stored as one
/// exact matrix block per source degree. The block at source degree `d`
/// maps `V^d -> W^{d + degree}` and acts on column vectors.
#[derive(Debug, Clone)]
pub struct GradedMap {
    degree: i64,
    blocks: BTreeMap<i64, ExactMatrix>,
}

impl GradedMap {
    pub fn new(degree: i64) -> Self {
        GradedMap {
            degree,
            blocks: BTreeMap::new(),
        }
    }

    /// The identity map of a space (degree 0).
    pub fn identity(space: &GradedSpace) -> Self {
        let mut m = GradedMap::new(0);
        for d in space.degrees() {
            m = m.with_block(d, ExactMatrix::identity(space.dim(d)));
        }
        m
    }

    pub fn with_block(mut self, source_degree: i64, block: ExactMatrix) -> Self {
        self.blocks.insert(source_degree, block);
        self
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn block(&self, source_degree: i64) -> Option<&ExactMatrix> {
        self.blocks.get(&source_degree)
    }

    /// Applies the map to an element (missing blocks act as zero).
    pub fn apply(&self, space: &GradedSpace, e: &GradedElement) -> GradedElement {
        let mut out = GradedElement::zero();
        for (d, block) in &self.blocks {
            let x = e.component(space, *d);
            if x.iter().all(Zero::is_zero) {
                continue;
            }
            let y = block.mul_vec(&x);
            for (i, v) in y.into_iter().enumerate() {
                if !v.is_zero() {
                    out.add_to(d + self.degree, i, v);
                }
            }
        }
        out
    }

    /// Composition `self o other`; degrees add.
    pub fn compose(&self, other: &GradedMap) -> GradedMap {
        let mut out = GradedMap::new(self.degree + other.degree);
        for (d, g) in &other.blocks {
            if let Some(f) = self.blocks.get(&(d + other.degree)) {
                out.blocks.insert(*d, f.mul(g));
            }
        }
        out
    }
}
