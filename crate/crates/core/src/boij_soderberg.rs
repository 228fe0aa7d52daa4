//! Boij-Söderberg decomposition of 0-regular cohomology tables into positive
//! rational multiples of homogeneous-bundle tables along a chain of
//! partitions.
//!
//! Greedy: the pivot partition is read off the residual's regularity indices
//! (`λ_k = -reg^k`), which is the minimal partition still present; its
//! coefficient is the smallest ratio residual/pivot over the pivot's nonzero
//! cells. The pivot always has a cell that no larger partition of the chain
//! reaches, so an honest chain sum is recovered exactly.

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::parallel::{self, Execution};
use crate::partitions::GenPartition;
use crate::tables::{CohomologyTable, ColRange, Extent, Index};

pub const MAX_ITERATIONS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub n: usize,
    /// `(coefficient, λ)`, smallest partition first
    pub terms: Vec<(BigRational, GenPartition)>,
    pub residual_zero: bool,
    pub chain_certified: bool,
}

impl Decomposition {
    /// `[{"coeff": "p/q", "lambda": "a,b,c"}, ...]`
    pub fn terms_json(&self) -> Value {
        Value::Array(
            self.terms.iter().map(|(c, l)| json!({ "coeff": c.to_string(), "lambda": l.to_string() })).collect(),
        )
    }
}

impl Serialize for Decomposition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        json!({
            "n": self.n,
            "terms": self.terms_json(),
            "residual_zero": self.residual_zero,
            "chain_certified": self.chain_certified,
        })
        .serialize(s)
    }
}

fn not_in_scope(msg: impl Into<String>) -> Error {
    Error::NotDecomposableWithinScope(msg.into())
}

/// Display columns on which the decomposition is verified.
fn verification_window(t: &CohomologyTable, terms: &[(BigRational, GenPartition)]) -> Result<ColRange> {
    let n = t.n() as i64;
    match t.extent()? {
        Extent::Window(w) => Ok(w),
        Extent::Certified(r) => {
            let max_part = terms.iter().map(|(_, l)| l.largest().abs()).max().unwrap_or(0);
            let reach = max_part + n + 2;
            Ok(ColRange::new(r.lo.min(-reach) - n - 1, r.hi.max(reach) + n + 1))
        }
    }
}

pub fn decompose(t: &CohomologyTable) -> Result<Decomposition> {
    let n = t.n();
    let reg0 = t.reg(0)?;
    if reg0.window_limited {
        return Err(not_in_scope("reg^0 is window-limited"));
    }
    match reg0.value {
        Index::NegInfinity => {
            return Ok(Decomposition { n, terms: Vec::new(), residual_zero: true, chain_certified: true });
        }
        Index::Finite(r) if r <= 0 => {}
        other => return Err(Error::NotZeroRegular(other.to_string())),
    }

    let mut terms: Vec<(BigRational, GenPartition)> = Vec::new();
    for _ in 0..MAX_ITERATIONS {
        let residual = residual_table(t, &terms)?;
        if residual.is_zero()? {
            return finish(t, terms);
        }
        let mut parts = Vec::with_capacity(n);
        for k in (0..n).rev() {
            let r = residual.reg(k)?;
            if r.window_limited {
                return Err(not_in_scope(format!("reg^{k} of the residual is window-limited")));
            }
            let v = r.value.finite().ok_or_else(|| not_in_scope(format!("reg^{k} of the residual is infinite")))?;
            parts.push(-v);
        }
        let lambda = GenPartition::new(parts).map_err(|e| not_in_scope(format!("pivot is not a partition: {e}")))?;
        if let Some((_, prev)) = terms.last() {
            if !prev.leq(&lambda)? || *prev == lambda {
                return Err(not_in_scope(format!("chain order violated: {prev} then {lambda}")));
            }
        }
        let window = verification_window(t, &[(BigRational::zero(), lambda.clone())])?;
        let pivot = CohomologyTable::bott(lambda.clone());
        let mut coeff: Option<BigRational> = None;
        for c in window.columns() {
            for i in 0..=n {
                let b = pivot.cell(i, c)?;
                if b.is_zero() {
                    continue;
                }
                let ratio = residual.cell(i, c)? / b;
                if coeff.as_ref().is_none_or(|cur| ratio < *cur) {
                    coeff = Some(ratio);
                }
            }
        }
        let coeff = coeff.ok_or_else(|| not_in_scope("pivot table has no nonzero cell in the window"))?;
        if !coeff.is_positive() {
            return Err(not_in_scope(format!("greedy coefficient {coeff} for {lambda} is not positive")));
        }
        terms.push((coeff, lambda));
    }
    let residual = residual_table(t, &terms)?;
    if residual.is_zero()? {
        return finish(t, terms);
    }
    Err(not_in_scope(format!("residual nonzero after {MAX_ITERATIONS} steps")))
}

fn residual_table(t: &CohomologyTable, terms: &[(BigRational, GenPartition)]) -> Result<CohomologyTable> {
    let negated = terms.iter().map(|(c, l)| (-c, l.clone())).collect();
    t.direct_sum(&CohomologyTable::bott_sum(t.n(), negated)?)
}

fn finish(t: &CohomologyTable, terms: Vec<(BigRational, GenPartition)>) -> Result<Decomposition> {
    let n = t.n();
    let window = verification_window(t, &terms)?;
    let recomposed = CohomologyTable::bott_sum(n, terms.clone())?;
    let mut residual_zero = recomposed.entries_equal(t, window)?;
    if let Ok(chi) = t.hilbert_polynomial() {
        residual_zero &= chi == recomposed.hilbert_polynomial()?;
    }
    let mut chain_certified = true;
    for w in terms.windows(2) {
        chain_certified &= w[0].1.leq(&w[1].1)? && w[0].1 != w[1].1;
    }
    Ok(Decomposition { n, terms, residual_zero, chain_certified })
}

/// `Σ c · γ(S_λ Q)` as a table.
pub fn recompose(d: &Decomposition) -> CohomologyTable {
    CohomologyTable::bott_sum(d.n, d.terms.clone()).expect("decomposition terms have length n")
}

pub fn decompose_many(tables: &[CohomologyTable], exec: Execution) -> Vec<Result<Decomposition>> {
    parallel::map(exec, tables, decompose)
}
