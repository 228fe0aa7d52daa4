//! Regularity bounds for tensor products and their sharpness.
//!
//! For bundles `F`, `G` on `P^n` and `0 <= p < n`:
//!
//! ```text
//! reg^p(F⊗G)   <= min_{k+l=p} (reg^k F + reg^l G)
//! coreg^p(F⊗G) >= 1 + max_{k+l=p} (coreg^k F + coreg^l G)
//! ```
//!
//! with equality for pairs of homogeneous bundles. The checkers here work
//! on tables only, i.e. they verify the vector-bundle case.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::parallel::{self, Execution};
use crate::partitions::{lr_expand, GenPartition};
use crate::tables::{CohomologyTable, Index, IndexValue};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Reg,
    Coreg,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundEntry {
    pub p: usize,
    pub bound: Index,
    pub actual: Index,
    pub satisfied: bool,
    pub equality: bool,
    /// false when a window-limited index entered either side
    pub certified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub side: Side,
    pub entries: Vec<BoundEntry>,
}

impl BoundReport {
    pub fn all_satisfied(&self) -> bool {
        self.entries.iter().all(|e| e.satisfied)
    }

    pub fn all_equal(&self) -> bool {
        self.entries.iter().all(|e| e.equality)
    }

    pub fn all_certified(&self) -> bool {
        self.entries.iter().all(|e| e.certified)
    }

    /// A bound that fails on fully certified indices.
    pub fn certified_violation(&self) -> bool {
        self.entries.iter().any(|e| e.certified && !e.satisfied)
    }
}

/// `S_λ Q ⊗ S_μ Q`, extended bilinearly over the summands of both tables.
pub fn tensor_homogeneous(f: &CohomologyTable, g: &CohomologyTable) -> Result<CohomologyTable> {
    if f.n() != g.n() {
        return Err(Error::DimensionMismatch { left: f.n(), right: g.n() });
    }
    let ft = f.homogeneous_terms().ok_or(Error::NotHomogeneous)?;
    let gt = g.homogeneous_terms().ok_or(Error::NotHomogeneous)?;
    let mut acc: BTreeMap<GenPartition, BigRational> = BTreeMap::new();
    for (mf, lambda) in &ft {
        for (mg, mu) in &gt {
            let m = mf * mg;
            if m.is_zero() {
                continue;
            }
            for (nu, c) in lr_expand(lambda, mu)?.iter() {
                *acc.entry(nu.clone()).or_insert_with(BigRational::zero) += &m * BigRational::from_integer(c.into());
            }
        }
    }
    let terms = acc.into_iter().filter(|(_, m)| !m.is_zero()).map(|(nu, m)| (m, nu)).collect();
    CohomologyTable::bott_sum(f.n(), terms)
}

fn reg_profile(t: &CohomologyTable, side: Side) -> Result<Vec<IndexValue>> {
    (0..t.n())
        .map(|k| match side {
            Side::Reg => t.reg(k),
            Side::Coreg => t.coreg(k),
        })
        .collect()
}

fn report(side: Side, f: &[IndexValue], g: &[IndexValue], fg: &[IndexValue]) -> BoundReport {
    let entries = (0..fg.len())
        .map(|p| {
            let mut certified = !fg[p].window_limited;
            let mut bound: Option<Index> = None;
            for k in 0..=p {
                let (a, b) = (f[k], g[p - k]);
                certified &= !a.window_limited && !b.window_limited;
                let Some(s) = a.value.checked_add(b.value) else {
                    certified = false;
                    continue;
                };
                bound = Some(match (side, bound) {
                    (_, None) => s,
                    (Side::Reg, Some(cur)) => cur.min(s),
                    (Side::Coreg, Some(cur)) => cur.max(s),
                });
            }
            let bound = match side {
                Side::Reg => bound.unwrap_or(Index::PosInfinity),
                Side::Coreg => bound.unwrap_or(Index::NegInfinity).offset(1),
            };
            let actual = fg[p].value;
            let satisfied = match side {
                Side::Reg => actual <= bound,
                Side::Coreg => actual >= bound,
            };
            BoundEntry { p, bound, actual, satisfied, equality: actual == bound, certified }
        })
        .collect();
    BoundReport { side, entries }
}

/// Evaluates both tensor bounds against a supplied product table `t_fg`.
pub fn check_tensor_bounds(
    t_f: &CohomologyTable,
    t_g: &CohomologyTable,
    t_fg: &CohomologyTable,
) -> Result<(BoundReport, BoundReport)> {
    for t in [t_g, t_fg] {
        if t.n() != t_f.n() {
            return Err(Error::DimensionMismatch { left: t_f.n(), right: t.n() });
        }
    }
    let mut out = Vec::with_capacity(2);
    for side in [Side::Reg, Side::Coreg] {
        let (f, g, fg) = (reg_profile(t_f, side)?, reg_profile(t_g, side)?, reg_profile(t_fg, side)?);
        out.push(report(side, &f, &g, &fg));
    }
    let coreg = out.pop().unwrap();
    Ok((out.pop().unwrap(), coreg))
}

/// Regularity of `S_λ Q ⊗ S_μ Q` against `-max_{k+l=p} (λ_k + μ_l)`.
pub fn check_sharpness(lambda: &GenPartition, mu: &GenPartition) -> Result<BoundReport> {
    let product = tensor_homogeneous(&CohomologyTable::bott(lambda.clone()), &CohomologyTable::bott(mu.clone()))?;
    let n = lambda.n();
    let entries = (0..n)
        .map(|p| {
            let bound = Index::Finite(-(0..=p).map(|k| lambda.part(k) + mu.part(p - k)).max().unwrap());
            let actual = product.reg(p)?.value;
            Ok(BoundEntry { p, bound, actual, satisfied: actual <= bound, equality: actual == bound, certified: true })
        })
        .collect::<Result<_>>()?;
    Ok(BoundReport { side: Side::Reg, entries })
}

pub fn sharpness_sweep(pairs: &[(GenPartition, GenPartition)], exec: Execution) -> Vec<Result<BoundReport>> {
    parallel::map(exec, pairs, |(l, m)| check_sharpness(l, m))
}

/// Some `ν` in `S_λ ⊗ S_μ` (at most `n` rows) with
/// `ν_p <= max_{k+l=p} (λ_k + μ_l)`; the lexicographically smallest one.
pub fn lr_witness(lambda: &GenPartition, mu: &GenPartition, p: usize) -> Result<GenPartition> {
    if p >= lambda.n() {
        return Err(Error::IndexOutOfRange { index: p as i64, bound: lambda.n() });
    }
    let g = (0..=p).map(|k| lambda.part(k) + mu.part(p - k)).max().unwrap();
    lr_expand(lambda, mu)?.iter().map(|(nu, _)| nu).find(|nu| nu.part(p) <= g).cloned().ok_or(Error::NoWitness { p })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// `reg^0 - coreg^1 <= 3` only
    RegZero,
    /// `reg^1 - coreg^0 <= 3` only
    RegOne,
    Both,
    Neither,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnobstructedReport {
    pub holds: bool,
    pub branch: Branch,
    /// `(reg^0 - coreg^1, reg^1 - coreg^0)`
    pub margins: (Index, Index),
    pub window_limited: bool,
}

/// `reg^0 F - coreg^1 F <= 3` or `reg^1 F - coreg^0 F <= 3` forces
/// `Ext^2(F, F) = 0`.
pub fn unobstructed_criterion(t: &CohomologyTable) -> Result<UnobstructedReport> {
    let (r0, r1, c0, c1) = (t.reg(0)?, t.reg(1)?, t.coreg(0)?, t.coreg(1)?);
    let window_limited = [r0, r1, c0, c1].iter().any(|v| v.window_limited);
    let margin = |r: IndexValue, c: IndexValue| {
        r.value.checked_add(c.value.negated()).ok_or_else(|| Error::Undecidable("indeterminate margin".into()))
    };
    let margins = (margin(r0, c1)?, margin(r1, c0)?);
    let three = Index::Finite(3);
    let branch = match (margins.0 <= three, margins.1 <= three) {
        (true, true) => Branch::Both,
        (true, false) => Branch::RegZero,
        (false, true) => Branch::RegOne,
        (false, false) => Branch::Neither,
    };
    Ok(UnobstructedReport { holds: branch != Branch::Neither, branch, margins, window_limited })
}
