//! Cohomology tables `γ(F) = {h^i(F(d))}` of bundles on `P^n`.
//!
//! A table is a queryable map `(i, d) -> h^i(F(d))`. Infinite tables are
//! never materialized: they are backed by a generator (Bott sums, Künneth
//! pushforwards and their duals, twists, sums and multiples). Finite excerpts
//! such as reference tables are [`Backend::Literal`] grids, and reading one
//! outside its window is an error rather than a silent zero.
//!
//! Display convention: `h^i(F(d))` sits in row `i` and display column `i+d`.
//! The antidiagonal `m` of the definitions of `reg`/`coreg` is therefore
//! the display column `m`.
//!
//! Entries are exact rationals so that rational combinations of tables
//! (Boij-Söderberg residuals and recompositions) stay inside the same type;
//! every table of an honest bundle is integral.

mod ascii;
mod json;

pub use ascii::normalize_ascii;

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::bott::{bott_cohomology, chi_polynomial};
use crate::error::{Error, Result};
use crate::kunneth::product_line_cohomology;
use crate::parallel::{self, Execution};
use crate::partitions::GenPartition;
use crate::poly::Poly;

/// Inclusive range of display columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ColRange {
    pub lo: i64,
    pub hi: i64,
}

impl ColRange {
    pub fn new(lo: i64, hi: i64) -> Self {
        ColRange { lo, hi }
    }

    pub fn contains(&self, c: i64) -> bool {
        self.lo <= c && c <= self.hi
    }

    pub fn width(&self) -> usize {
        (self.hi - self.lo + 1).max(0) as usize
    }

    pub fn columns(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi
    }

    fn shift(self, s: i64) -> Self {
        ColRange::new(self.lo + s, self.hi + s)
    }

    /// Image under `c -> -c-1`, the column reflection of Serre duality.
    fn reflect(self) -> Self {
        ColRange::new(-self.hi - 1, -self.lo - 1)
    }

    fn hull(self, other: Self) -> Self {
        ColRange::new(self.lo.min(other.lo), self.hi.max(other.hi))
    }

    fn intersect(self, other: Self) -> Option<Self> {
        let r = ColRange::new(self.lo.max(other.lo), self.hi.min(other.hi));
        (r.lo <= r.hi).then_some(r)
    }
}

/// Where a table's entries are known.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extent {
    /// Defined everywhere; left of `lo` only row `n` may be nonzero and right
    /// of `hi` only row `0`.
    Certified(ColRange),
    /// Defined on this window only.
    Window(ColRange),
}

impl Extent {
    pub fn range(&self) -> ColRange {
        match *self {
            Extent::Certified(r) | Extent::Window(r) => r,
        }
    }

    fn map(self, f: impl Fn(ColRange) -> ColRange) -> Self {
        match self {
            Extent::Certified(r) => Extent::Certified(f(r)),
            Extent::Window(r) => Extent::Window(f(r)),
        }
    }
}

/// A finite grid of entries: `rows[i][c - window.lo]` is display cell `(i, c)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiteralGrid {
    window: ColRange,
    rows: Vec<Vec<BigRational>>,
}

#[derive(Debug, Clone)]
pub enum Backend {
    BottSum(Vec<(BigRational, GenPartition)>),
    Kunneth(Vec<i64>),
    Dual(Arc<CohomologyTable>),
    Twist(Arc<CohomologyTable>, i64),
    Sum(Vec<CohomologyTable>),
    Scale(BigRational, Arc<CohomologyTable>),
    Literal(LiteralGrid),
}

#[derive(Debug, Clone)]
pub struct CohomologyTable {
    n: usize,
    backend: Backend,
}

/// A regularity or coregularity index, possibly infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Index {
    NegInfinity,
    Finite(i64),
    PosInfinity,
}

impl Index {
    pub fn finite(self) -> Option<i64> {
        match self {
            Index::Finite(v) => Some(v),
            _ => None,
        }
    }

    /// `None` for the indeterminate `-∞ + ∞`.
    pub fn checked_add(self, other: Index) -> Option<Index> {
        use Index::*;
        match (self, other) {
            (Finite(a), Finite(b)) => Some(Finite(a + b)),
            (NegInfinity, PosInfinity) | (PosInfinity, NegInfinity) => None,
            (NegInfinity, _) | (_, NegInfinity) => Some(NegInfinity),
            (PosInfinity, _) | (_, PosInfinity) => Some(PosInfinity),
        }
    }

    pub fn negated(self) -> Index {
        match self {
            Index::NegInfinity => Index::PosInfinity,
            Index::PosInfinity => Index::NegInfinity,
            Index::Finite(v) => Index::Finite(-v),
        }
    }

    pub fn offset(self, s: i64) -> Index {
        match self {
            Index::Finite(v) => Index::Finite(v + s),
            other => other,
        }
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Index::NegInfinity => write!(f, "-inf"),
            Index::PosInfinity => write!(f, "+inf"),
            Index::Finite(v) => write!(f, "{v}"),
        }
    }
}

impl Serialize for Index {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Index::Finite(v) => s.serialize_i64(*v),
            other => s.serialize_str(&other.to_string()),
        }
    }
}

/// An index together with whether a literal window may have cut it short.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IndexValue {
    pub value: Index,
    pub window_limited: bool,
}

impl IndexValue {
    fn certified(value: Index) -> Self {
        IndexValue { value, window_limited: false }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegularityProfile {
    pub n: usize,
    /// `reg^k` for `k = 0..n`
    pub reg: Vec<IndexValue>,
    /// `coreg^k` for `k = 0..n`
    pub coreg: Vec<IndexValue>,
}

/// One summand `H^j(F(e-j)) ⊗ Ω^{j-e}(j-e)` of a Beilinson monad term.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BeilinsonTerm {
    pub j: usize,
    pub multiplicity: BigInt,
    /// `j - e`, the degree of the twisted forms `Ω^{j-e}(j-e)`
    pub forms: usize,
}

/// Nonnegative integer or fraction `p/q`.
pub(crate) fn parse_rational(s: &str) -> Option<BigRational> {
    if s == "." {
        return None;
    }
    ascii::parse_entry(s)
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

impl CohomologyTable {
    fn with(n: usize, backend: Backend) -> Self {
        CohomologyTable { n, backend }
    }

    /// Table of `S_λ Q` on `P^n`, `n = λ.n()`.
    pub fn bott(lambda: GenPartition) -> Self {
        CohomologyTable::with(lambda.n(), Backend::BottSum(vec![(BigRational::one(), lambda)]))
    }

    /// Table of `O(t)` on `P^n`.
    pub fn line_bundle(n: usize, t: i64) -> Self {
        CohomologyTable::bott(GenPartition::constant(n, t))
    }

    /// `⊕ m · S_λ Q` on `P^n`.
    pub fn bott_sum(n: usize, terms: Vec<(BigRational, GenPartition)>) -> Result<Self> {
        if let Some((_, bad)) = terms.iter().find(|(_, l)| l.n() != n) {
            return Err(Error::LengthMismatch { expected: n, got: bad.n() });
        }
        Ok(CohomologyTable::with(n, Backend::BottSum(terms)))
    }

    pub(crate) fn kunneth(a: Vec<i64>) -> Self {
        CohomologyTable::with(a.len(), Backend::Kunneth(a))
    }

    /// Literal grid; `rows[i]` is row `i` (bottom row first) over `window`.
    pub fn literal(n: usize, window: ColRange, rows: Vec<Vec<BigRational>>) -> Result<Self> {
        if window.lo > window.hi {
            return Err(Error::EmptyWindow);
        }
        if rows.len() != n + 1 {
            return Err(Error::LengthMismatch { expected: n + 1, got: rows.len() });
        }
        for row in &rows {
            if row.len() != window.width() {
                return Err(Error::LengthMismatch { expected: window.width(), got: row.len() });
            }
            if row.iter().any(Signed::is_negative) {
                return Err(Error::Parse { line: 0, column: 0, message: "negative entry".into() });
            }
        }
        Ok(CohomologyTable::with(n, Backend::Literal(LiteralGrid { window, rows })))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn backend(&self) -> &Backend {
        &self.backend
    }

    pub fn is_literal(&self) -> bool {
        matches!(self.extent(), Ok(Extent::Window(_)))
    }

    // ----- constructions -------------------------------------------------

    /// Serre dual: `h^i(F^*(d)) = h^{n-i}(F(-d-n-1))`.
    pub fn dual(&self) -> Self {
        CohomologyTable::with(self.n, Backend::Dual(Arc::new(self.clone())))
    }

    /// `F(s)`
    pub fn twist(&self, s: i64) -> Self {
        CohomologyTable::with(self.n, Backend::Twist(Arc::new(self.clone()), s))
    }

    pub fn direct_sum(&self, other: &CohomologyTable) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { left: self.n, right: other.n });
        }
        let mut parts = Vec::new();
        for t in [self, other] {
            match &t.backend {
                Backend::Sum(inner) => parts.extend(inner.iter().cloned()),
                _ => parts.push(t.clone()),
            }
        }
        Ok(CohomologyTable::with(self.n, Backend::Sum(parts)))
    }

    pub fn scale(&self, c: BigRational) -> Self {
        match &self.backend {
            Backend::BottSum(terms) => CohomologyTable::with(
                self.n,
                Backend::BottSum(terms.iter().map(|(m, l)| (m * &c, l.clone())).collect()),
            ),
            _ => CohomologyTable::with(self.n, Backend::Scale(c, Arc::new(self.clone()))),
        }
    }

    /// Rewrites the table as `⊕ m · S_λ Q` when it is built from homogeneous
    /// bundles only (duals, twists, sums and multiples of Bott sums).
    pub fn homogeneous_terms(&self) -> Option<Vec<(BigRational, GenPartition)>> {
        match &self.backend {
            Backend::BottSum(terms) => Some(terms.clone()),
            Backend::Twist(t, s) => Some(t.homogeneous_terms()?.into_iter().map(|(m, l)| (m, l.shift(*s))).collect()),
            Backend::Dual(t) => Some(t.homogeneous_terms()?.into_iter().map(|(m, l)| (m, l.dual())).collect()),
            Backend::Scale(c, t) => Some(t.homogeneous_terms()?.into_iter().map(|(m, l)| (m * c, l)).collect()),
            Backend::Sum(ts) => {
                let mut all = Vec::new();
                for t in ts {
                    all.extend(t.homogeneous_terms()?);
                }
                Some(all)
            }
            Backend::Kunneth(_) | Backend::Literal(_) => None,
        }
    }

    // ----- entries -------------------------------------------------------

    /// `h^i(F(d))`; zero for rows outside `0..=n`.
    pub fn entry(&self, i: i64, d: i64) -> Result<BigRational> {
        if i < 0 || i > self.n as i64 {
            return Ok(BigRational::zero());
        }
        let iu = i as usize;
        match &self.backend {
            Backend::BottSum(terms) => {
                let mut acc = BigRational::zero();
                for (m, lambda) in terms {
                    let h = bott_cohomology(self.n, lambda, d)?.h(iu);
                    if !h.is_zero() {
                        acc += m * BigRational::from_integer(h);
                    }
                }
                Ok(acc)
            }
            Backend::Kunneth(a) => {
                let shifted: Vec<i64> = a.iter().map(|x| x + d).collect();
                Ok(BigRational::from_integer(product_line_cohomology(&shifted, iu)))
            }
            Backend::Dual(t) => t.entry(self.n as i64 - i, -d - self.n as i64 - 1),
            Backend::Twist(t, s) => t.entry(i, d + s),
            Backend::Sum(ts) => {
                let mut acc = BigRational::zero();
                for t in ts {
                    acc += t.entry(i, d)?;
                }
                Ok(acc)
            }
            Backend::Scale(c, t) => Ok(c * t.entry(i, d)?),
            Backend::Literal(grid) => {
                let col = i + d;
                if !grid.window.contains(col) {
                    return Err(Error::WindowExceeded { row: iu, twist: d, lo: grid.window.lo, hi: grid.window.hi });
                }
                Ok(grid.rows[iu][(col - grid.window.lo) as usize].clone())
            }
        }
    }

    /// Entry at display cell `(i, c)`, i.e. `h^i(F(c-i))`.
    pub fn cell(&self, i: usize, c: i64) -> Result<BigRational> {
        self.entry(i as i64, c - i as i64)
    }

    /// Integer entry; errors if the table has a fractional value there.
    pub fn entry_int(&self, i: i64, d: i64) -> Result<BigInt> {
        let v = self.entry(i, d)?;
        if !v.is_integer() {
            return Err(Error::Undecidable(format!("entry ({i}, {d}) = {v} is not integral")));
        }
        Ok(v.to_integer())
    }

    /// The display window, rows `0..=n` each over `range`.
    pub fn materialize(&self, range: ColRange, exec: Execution) -> Result<Vec<Vec<BigRational>>> {
        let cols: Vec<i64> = range.columns().collect();
        let columns: Vec<Result<Vec<BigRational>>> =
            parallel::map(exec, &cols, |&c| (0..=self.n).map(|i| self.cell(i, c)).collect());
        let mut rows = vec![Vec::with_capacity(cols.len()); self.n + 1];
        for column in columns {
            for (i, v) in column?.into_iter().enumerate() {
                rows[i].push(v);
            }
        }
        Ok(rows)
    }

    /// Freezes `range` into a literal table.
    pub fn to_literal(&self, range: ColRange) -> Result<Self> {
        let rows = self.materialize(range, Execution::default())?;
        Ok(CohomologyTable::with(self.n, Backend::Literal(LiteralGrid { window: range, rows })))
    }

    pub fn entries_equal(&self, other: &CohomologyTable, range: ColRange) -> Result<bool> {
        if self.n != other.n {
            return Ok(false);
        }
        for c in range.columns() {
            for i in 0..=self.n {
                if self.cell(i, c)? != other.cell(i, c)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    // ----- extents -------------------------------------------------------

    pub fn extent(&self) -> Result<Extent> {
        let n = self.n as i64;
        Ok(match &self.backend {
            Backend::BottSum(terms) => {
                let live = terms.iter().filter(|(m, _)| !m.is_zero());
                let (lo, hi) = live.fold((i64::MAX, i64::MIN), |(lo, hi), (_, l)| {
                    (lo.min(-l.largest() - n - 2), hi.max(-l.smallest() + n + 2))
                });
                if lo > hi {
                    Extent::Certified(ColRange::new(0, 0))
                } else {
                    Extent::Certified(ColRange::new(lo, hi))
                }
            }
            Backend::Kunneth(a) => {
                let max = a.iter().copied().max().unwrap_or(0);
                let min = a.iter().copied().min().unwrap_or(0);
                Extent::Certified(ColRange::new(-max - n - 2, -min + n + 2))
            }
            Backend::Dual(t) => t.extent()?.map(ColRange::reflect),
            Backend::Twist(t, s) => t.extent()?.map(|r| r.shift(-s)),
            Backend::Scale(_, t) => t.extent()?,
            Backend::Sum(ts) => {
                let mut certified: Option<ColRange> = None;
                let mut window: Option<ColRange> = None;
                for t in ts {
                    match t.extent()? {
                        Extent::Certified(r) => certified = Some(certified.map_or(r, |c| c.hull(r))),
                        Extent::Window(r) => {
                            window = Some(match window {
                                None => r,
                                Some(w) => w.intersect(r).ok_or(Error::EmptyWindow)?,
                            })
                        }
                    }
                }
                match (window, certified) {
                    (Some(w), _) => Extent::Window(w),
                    (None, Some(c)) => Extent::Certified(c),
                    (None, None) => Extent::Certified(ColRange::new(0, 0)),
                }
            }
            Backend::Literal(grid) => Extent::Window(grid.window),
        })
    }

    /// Literal window, if the table has one.
    pub fn window(&self) -> Option<ColRange> {
        match self.extent() {
            Ok(Extent::Window(w)) => Some(w),
            _ => None,
        }
    }

    /// A display range that shows every nonzero entry of interior rows.
    pub fn natural_range(&self) -> Result<ColRange> {
        Ok(match self.extent()? {
            Extent::Window(w) => w,
            Extent::Certified(r) => r,
        })
    }

    // ----- regularity ----------------------------------------------------

    fn column_vanishes(&self, c: i64, rows: impl Iterator<Item = usize>) -> Result<bool> {
        for j in rows {
            if !self.cell(j, c)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Row `row` vanishes on `n+1` consecutive columns starting at `start`
    /// and moving in direction `step`. Outside a certified range the
    /// surviving boundary row is a polynomial of degree at most `n` in the
    /// column, so this decides whether it vanishes on the whole tail.
    fn tail_vanishes(&self, row: usize, start: i64, step: i64) -> Result<bool> {
        for t in 0..=self.n as i64 {
            if !self.cell(row, start + step * t)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `reg^k F = inf{m | H^j F(m-j) = 0 for all j > k}`; `-∞` for `k >= n`.
    pub fn reg(&self, k: usize) -> Result<IndexValue> {
        if k >= self.n {
            return Ok(IndexValue::certified(Index::NegInfinity));
        }
        if let Some(v) = self.closed_form_reg(k) {
            return Ok(IndexValue::certified(v));
        }
        self.reg_by_scan(k)
    }

    /// `coreg^k F = sup{m | H^j F(m-j) = 0 for all j < n-k}`; `+∞` for `k >= n`.
    pub fn coreg(&self, k: usize) -> Result<IndexValue> {
        if k >= self.n {
            return Ok(IndexValue::certified(Index::PosInfinity));
        }
        if let Some(v) = self.closed_form_coreg(k) {
            return Ok(IndexValue::certified(v));
        }
        self.coreg_by_scan(k)
    }

    /// `reg^k` evaluated straight from the definition by scanning columns,
    /// bypassing the closed form for homogeneous bundles.
    pub fn reg_by_scan(&self, k: usize) -> Result<IndexValue> {
        if k >= self.n {
            return Ok(IndexValue::certified(Index::NegInfinity));
        }
        let above = || k + 1..=self.n;
        match self.extent()? {
            Extent::Certified(r) => {
                // left of r.lo only row n survives
                if self.column_vanishes(r.lo - 1, above())? && self.tail_vanishes(self.n, r.lo - 1, -1)? {
                    return Ok(IndexValue::certified(Index::NegInfinity));
                }
                for m in r.lo - 1..=r.hi {
                    if self.column_vanishes(m, above())? {
                        return Ok(IndexValue::certified(Index::Finite(m)));
                    }
                }
                Ok(IndexValue::certified(Index::Finite(r.hi + 1)))
            }
            Extent::Window(w) => {
                for m in w.columns() {
                    if self.column_vanishes(m, above())? {
                        return Ok(IndexValue { value: Index::Finite(m), window_limited: m == w.lo });
                    }
                }
                Ok(IndexValue { value: Index::Finite(w.hi + 1), window_limited: true })
            }
        }
    }

    /// `coreg^k` straight from the definition, see [`reg_by_scan`](Self::reg_by_scan).
    pub fn coreg_by_scan(&self, k: usize) -> Result<IndexValue> {
        if k >= self.n {
            return Ok(IndexValue::certified(Index::PosInfinity));
        }
        let below = || 0..self.n - k;
        match self.extent()? {
            Extent::Certified(r) => {
                // right of r.hi only row 0 survives
                if self.column_vanishes(r.hi + 1, below())? && self.tail_vanishes(0, r.hi + 1, 1)? {
                    return Ok(IndexValue::certified(Index::PosInfinity));
                }
                for m in (r.lo..=r.hi + 1).rev() {
                    if self.column_vanishes(m, below())? {
                        return Ok(IndexValue::certified(Index::Finite(m)));
                    }
                }
                Ok(IndexValue::certified(Index::Finite(r.lo - 1)))
            }
            Extent::Window(w) => {
                for m in w.columns().rev() {
                    if self.column_vanishes(m, below())? {
                        return Ok(IndexValue { value: Index::Finite(m), window_limited: m == w.hi });
                    }
                }
                Ok(IndexValue { value: Index::Finite(w.lo - 1), window_limited: true })
            }
        }
    }

    /// Closed forms for positive combinations of homogeneous bundles:
    /// `reg^k S_λ Q = -λ_k`, maxima over direct summands.
    fn closed_form_reg(&self, k: usize) -> Option<Index> {
        match &self.backend {
            Backend::BottSum(terms) => {
                if terms.iter().any(|(m, _)| m.is_negative()) {
                    return None;
                }
                Some(
                    terms
                        .iter()
                        .filter(|(m, _)| m.is_positive())
                        .map(|(_, l)| Index::Finite(-l.part(k)))
                        .max()
                        .unwrap_or(Index::NegInfinity),
                )
            }
            Backend::Twist(t, s) => Some(t.closed_form_reg(k)?.offset(-s)),
            Backend::Dual(t) => Some(t.closed_form_coreg(k)?.negated().offset(-1)),
            Backend::Scale(c, t) => match c.cmp(&BigRational::zero()) {
                Ordering::Greater => t.closed_form_reg(k),
                Ordering::Equal => Some(Index::NegInfinity),
                Ordering::Less => None,
            },
            Backend::Sum(ts) => {
                ts.iter().map(|t| t.closed_form_reg(k)).try_fold(Index::NegInfinity, |a, b| Some(a.max(b?)))
            }
            Backend::Kunneth(_) | Backend::Literal(_) => None,
        }
    }

    /// `coreg^k S_λ Q = -λ_{n-1-k} - 1`, minima over direct summands.
    fn closed_form_coreg(&self, k: usize) -> Option<Index> {
        match &self.backend {
            Backend::BottSum(terms) => {
                if terms.iter().any(|(m, _)| m.is_negative()) {
                    return None;
                }
                Some(
                    terms
                        .iter()
                        .filter(|(m, _)| m.is_positive())
                        .map(|(_, l)| Index::Finite(-l.part(self.n - 1 - k) - 1))
                        .min()
                        .unwrap_or(Index::PosInfinity),
                )
            }
            Backend::Twist(t, s) => Some(t.closed_form_coreg(k)?.offset(-s)),
            Backend::Dual(t) => Some(t.closed_form_reg(k)?.negated().offset(-1)),
            Backend::Scale(c, t) => match c.cmp(&BigRational::zero()) {
                Ordering::Greater => t.closed_form_coreg(k),
                Ordering::Equal => Some(Index::PosInfinity),
                Ordering::Less => None,
            },
            Backend::Sum(ts) => {
                ts.iter().map(|t| t.closed_form_coreg(k)).try_fold(Index::PosInfinity, |a, b| Some(a.min(b?)))
            }
            Backend::Kunneth(_) | Backend::Literal(_) => None,
        }
    }

    pub fn regularity_profile(&self) -> Result<RegularityProfile> {
        Ok(RegularityProfile {
            n: self.n,
            reg: (0..self.n).map(|k| self.reg(k)).collect::<Result<_>>()?,
            coreg: (0..self.n).map(|k| self.coreg(k)).collect::<Result<_>>()?,
        })
    }

    /// Whether every entry vanishes. Exact for generator tables; for literal
    /// tables it only speaks about the window.
    pub fn is_zero(&self) -> Result<bool> {
        let r = self.extent()?.range();
        let scan = ColRange::new(r.lo - self.n as i64 - 1, r.hi + self.n as i64 + 1);
        let scan = match self.extent()? {
            Extent::Window(w) => w,
            Extent::Certified(_) => scan,
        };
        for c in scan.columns() {
            if !self.column_vanishes(c, 0..=self.n)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    // ----- natural / supernatural ----------------------------------------

    /// At most one nonzero `h^i(F(d))` for each twist `d`.
    ///
    /// With a window only the cells inside it are inspected. Without one,
    /// generator tables are checked over their whole certified range (which
    /// decides every twist) and literal tables over their window.
    pub fn is_natural(&self, window: Option<ColRange>) -> Result<bool> {
        let n = self.n as i64;
        let (cols, twists) = match (window, self.extent()?) {
            (Some(w), _) | (None, Extent::Window(w)) => (w, ColRange::new(w.lo - n, w.hi)),
            (None, Extent::Certified(r)) => (ColRange::new(r.lo - n, r.hi + n), ColRange::new(r.lo - n, r.hi)),
        };
        for d in twists.columns() {
            let mut nonzero = 0;
            for i in 0..=n {
                if cols.contains(i + d) && !self.entry(i, d)?.is_zero() {
                    nonzero += 1;
                }
            }
            if nonzero > 1 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Natural cohomology and a Hilbert polynomial with `n` distinct integer
    /// roots. Literal tables need [`is_supernatural_with_chi`](Self::is_supernatural_with_chi).
    pub fn is_supernatural(&self) -> Result<bool> {
        if self.is_literal() {
            return Err(Error::Undecidable("supernaturality of a literal table needs its Hilbert polynomial".into()));
        }
        let chi = self.hilbert_polynomial()?;
        Ok(self.is_natural(None)? && has_distinct_integer_roots(&chi, self.n))
    }

    pub fn is_supernatural_with_chi(&self, chi: &Poly) -> Result<bool> {
        Ok(self.is_natural(None)? && has_distinct_integer_roots(chi, self.n))
    }

    // ----- Hilbert polynomial --------------------------------------------

    /// `d ↦ χ(F(d))`.
    pub fn hilbert_polynomial(&self) -> Result<Poly> {
        let n = self.n;
        Ok(match &self.backend {
            Backend::BottSum(terms) => {
                let mut acc = Poly::zero();
                for (m, l) in terms {
                    acc = &acc + &chi_polynomial(n, l)?.scale(m);
                }
                acc
            }
            Backend::Kunneth(a) => a.iter().fold(Poly::constant(rat(1)), |acc, &aj| &acc * &Poly::linear(rat(aj + 1))),
            Backend::Dual(t) => {
                let sign = if n.is_multiple_of(2) { rat(1) } else { rat(-1) };
                t.hilbert_polynomial()?.compose_affine(&rat(-1), &rat(-(n as i64) - 1)).scale(&sign)
            }
            Backend::Twist(t, s) => t.hilbert_polynomial()?.compose_affine(&rat(1), &rat(*s)),
            Backend::Sum(ts) => {
                let mut acc = Poly::zero();
                for t in ts {
                    acc = &acc + &t.hilbert_polynomial()?;
                }
                acc
            }
            Backend::Scale(c, t) => t.hilbert_polynomial()?.scale(c),
            Backend::Literal(_) => return Err(Error::NoHilbertPolynomial),
        })
    }

    /// `Σ_i (-1)^i h^i(F(d))`
    pub fn euler_characteristic(&self, d: i64) -> Result<BigRational> {
        let mut acc = BigRational::zero();
        for i in 0..=self.n {
            let v = self.entry(i as i64, d)?;
            if i % 2 == 0 {
                acc += v;
            } else {
                acc -= v;
            }
        }
        Ok(acc)
    }

    // ----- Beilinson monad -----------------------------------------------

    /// Terms of `B^e = ⊕_j H^j(F(e-j)) ⊗ Ω^{j-e}(j-e)`, read off display
    /// column `e`; zero multiplicities are omitted.
    pub fn beilinson_terms(&self, e: i64) -> Result<Vec<BeilinsonTerm>> {
        let n = self.n as i64;
        let mut out = Vec::new();
        for j in e.max(0)..=(e + n).min(n) {
            let m = self.entry_int(j, e - j)?;
            if !m.is_zero() {
                out.push(BeilinsonTerm { j: j as usize, multiplicity: m, forms: (j - e) as usize });
            }
        }
        Ok(out)
    }
}

fn has_distinct_integer_roots(chi: &Poly, n: usize) -> bool {
    if chi.degree() != Some(n) {
        return false;
    }
    let roots = chi.integer_roots();
    roots.len() == n && roots.iter().all(|&(_, m)| m == 1)
}

#[cfg(test)]
mod tests;
