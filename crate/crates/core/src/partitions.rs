//! Generalized partitions indexing the homogeneous bundles `S_λ Q`.
//!
//! Storage order: `parts` is kept **largest part first**, exactly as written
//! in text (`"4,1,0"`). Mathematical formulas index parts the other way
//! round, `λ = (λ_{n-1}, …, λ_0)` with `λ_{n-1}` the largest, so
//! [`GenPartition::part`]`(k)` returns `λ_k = parts[n-1-k]`. Always go
//! through `part` when a formula mentions `λ_k`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Weakly decreasing integer vector of fixed length `n`. Parts may be negative;
/// adding `t` to every part is the twist by `O(t)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenPartition {
    parts: Vec<i64>,
}

impl GenPartition {
    /// `parts` largest first.
    pub fn new(parts: Vec<i64>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::LengthMismatch { expected: 1, got: 0 });
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotDecreasing(parts));
        }
        Ok(GenPartition { parts })
    }

    /// The partition `(t, …, t)` with `n` parts, i.e. the line bundle `O(t)`.
    pub fn constant(n: usize, t: i64) -> Self {
        GenPartition { parts: vec![t; n] }
    }

    pub fn n(&self) -> usize {
        self.parts.len()
    }

    /// Parts, largest first.
    pub fn parts(&self) -> &[i64] {
        &self.parts
    }

    /// `λ_k`, where `λ_0` is the smallest part and `λ_{n-1}` the largest.
    pub fn part(&self, k: usize) -> i64 {
        self.parts[self.parts.len() - 1 - k]
    }

    pub fn smallest(&self) -> i64 {
        *self.parts.last().unwrap()
    }

    pub fn largest(&self) -> i64 {
        self.parts[0]
    }

    pub fn shift(&self, c: i64) -> GenPartition {
        GenPartition { parts: self.parts.iter().map(|p| p + c).collect() }
    }

    /// Highest weight of the dual representation: `(-λ_0, …, -λ_{n-1})`.
    pub fn dual(&self) -> GenPartition {
        GenPartition { parts: self.parts.iter().rev().map(|p| -p).collect() }
    }

    fn check_len(&self, other: &GenPartition) -> Result<()> {
        if self.n() != other.n() {
            return Err(Error::LengthMismatch { expected: self.n(), got: other.n() });
        }
        Ok(())
    }

    /// Componentwise order (inclusion of Young diagrams).
    pub fn leq(&self, other: &GenPartition) -> Result<bool> {
        self.check_len(other)?;
        Ok(self.parts.iter().zip(&other.parts).all(|(a, b)| a <= b))
    }
}

impl fmt::Display for GenPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(i64::to_string).collect();
        write!(f, "{}", s.join(","))
    }
}

impl fmt::Debug for GenPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for GenPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = parse_int_list(s)?;
        GenPartition::new(parts)
    }
}

impl Serialize for GenPartition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Parses `"4,1,-1"`; whitespace around entries is ignored.
pub fn parse_int_list(s: &str) -> Result<Vec<i64>> {
    let s = s.trim();
    let s = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(s);
    s.split(',')
        .enumerate()
        .map(|(i, tok)| {
            tok.trim().parse::<i64>().map_err(|e| Error::Parse {
                line: 1,
                column: i + 1,
                message: format!("bad integer {:?}: {e}", tok.trim()),
            })
        })
        .collect()
}

/// Dimension of the irreducible `GL_N` representation with highest weight
/// `ν` (largest entry first), by the Weyl dimension formula
/// `∏_{i<j} (ν_i - ν_j + j - i) / (j - i)`.
pub fn schur_dim(nu: &[i64], big_n: usize) -> Result<BigInt> {
    if nu.len() != big_n {
        return Err(Error::LengthMismatch { expected: big_n, got: nu.len() });
    }
    if nu.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::NotDecreasing(nu.to_vec()));
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..big_n {
        for j in i + 1..big_n {
            let gap = (j - i) as i64;
            num *= nu[i] - nu[j] + gap;
            den *= gap;
        }
    }
    Ok(num / den)
}

/// `S_λ ⊗ S_μ = ⊕ c^ν S_ν` restricted to `ν` with at most `n` rows.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LrExpansion {
    terms: BTreeMap<GenPartition, u64>,
}

impl LrExpansion {
    pub fn terms(&self) -> &BTreeMap<GenPartition, u64> {
        &self.terms
    }

    pub fn multiplicity(&self, nu: &GenPartition) -> u64 {
        self.terms.get(nu).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&GenPartition, u64)> {
        self.terms.iter().map(|(k, &v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn shift(&self, c: i64) -> LrExpansion {
        LrExpansion { terms: self.terms.iter().map(|(k, &v)| (k.shift(c), v)).collect() }
    }
}

/// Littlewood-Richardson expansion of `S_λ Q ⊗ S_μ Q` for rank `n = λ.n()`.
///
/// Counts LR skew tableaux of shape `ν/λ` and content `μ` (semistandard, with
/// lattice reverse reading word). Negative parts are handled by shifting both
/// factors to have smallest part 0 and shifting the result back.
pub fn lr_expand(lambda: &GenPartition, mu: &GenPartition) -> Result<LrExpansion> {
    lambda.check_len(mu)?;
    let (cl, cm) = (lambda.smallest(), mu.smallest());
    let base: Vec<usize> = lambda.parts.iter().map(|&p| (p - cl) as usize).collect();
    let content: Vec<usize> = mu.parts.iter().map(|&p| (p - cm) as usize).filter(|&p| p > 0).collect();
    let mut out = BTreeMap::new();
    let mut filler = LrFiller {
        n: base.len(),
        content: &content,
        shape: base.clone(),
        label_rows: vec![vec![0; base.len()]; content.len()],
        out: &mut out,
    };
    filler.place_label(0, base);
    let shift = cl + cm;
    let terms = out
        .into_iter()
        .map(|(shape, m)| {
            let parts = shape.into_iter().map(|p| p as i64 + shift).collect();
            (GenPartition { parts }, m)
        })
        .collect();
    Ok(LrExpansion { terms })
}

struct LrFiller<'a> {
    n: usize,
    content: &'a [usize],
    shape: Vec<usize>,
    /// `label_rows[t][r]`: boxes labelled `t` placed in row `r` (row 0 on top)
    label_rows: Vec<Vec<usize>>,
    out: &'a mut BTreeMap<Vec<usize>, u64>,
}

impl LrFiller<'_> {
    fn place_label(&mut self, label: usize, base: Vec<usize>) {
        if label == self.content.len() {
            *self.out.entry(self.shape.clone()).or_insert(0) += 1;
            return;
        }
        self.place_row(label, 0, self.content[label], &base, 0, 0);
    }

    /// Distributes the remaining `rem` boxes of `label` over rows `row..n`.
    /// `above_prev` / `above_cur` are the counts of `label-1` / `label` in rows
    /// strictly above `row`.
    fn place_row(&mut self, label: usize, row: usize, rem: usize, base: &[usize], above_prev: usize, above_cur: usize) {
        if rem == 0 {
            let next = self.shape.clone();
            self.place_label(label + 1, next);
            return;
        }
        if row == self.n {
            return;
        }
        let mut max = rem;
        if row > 0 {
            // horizontal strip: nothing under a box of this label
            max = max.min(base[row - 1] - base[row]);
        }
        if label > 0 {
            // lattice word: #label in rows <= row  <=  #(label-1) in rows < row
            max = max.min(above_prev.saturating_sub(above_cur));
        }
        let prev_here = if label > 0 { self.label_rows[label - 1][row] } else { 0 };
        for a in (0..=max).rev() {
            self.shape[row] += a;
            self.label_rows[label][row] = a;
            self.place_row(label, row + 1, rem - a, base, above_prev + prev_here, above_cur + a);
            self.shape[row] -= a;
        }
        self.label_rows[label][row] = 0;
    }
}
