//! Pushforwards `π_* O(a_1, …, a_m)` along the finite map `(P^1)^m → P^m`.
//!
//! By the projection formula `π^* O(1) = O(1, …, 1)`, so
//! `h^i(π_* O(a)(d)) = h^i((P^1)^m, O(a + d·1))`, which Künneth splits into
//! a sum over the factors carrying `H^1`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::partitions::parse_int_list;
use crate::tables::CohomologyTable;

/// Multidegree `(a_1, …, a_m)` of a line bundle on `(P^1)^m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiDegree(Vec<i64>);

impl MultiDegree {
    pub fn new(a: Vec<i64>) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::LengthMismatch { expected: 1, got: 0 });
        }
        Ok(MultiDegree(a))
    }

    pub fn degrees(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl FromStr for MultiDegree {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        MultiDegree::new(parse_int_list(s)?)
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "{}", s.join(","))
    }
}

fn h0_p1(a: i64) -> i64 {
    if a >= 0 {
        a + 1
    } else {
        0
    }
}

fn h1_p1(a: i64) -> i64 {
    if a <= -2 {
        -a - 1
    } else {
        0
    }
}

/// `h^i((P^1)^m, O(a))`: the sum over `i`-subsets `S` of
/// `∏_{j∈S} h^1(O(a_j)) · ∏_{j∉S} h^0(O(a_j))`.
pub fn product_line_cohomology(a: &[i64], i: usize) -> BigInt {
    if i > a.len() {
        return BigInt::zero();
    }
    // coefficients of ∏_j (h0_j + h1_j t)
    let mut coeffs = vec![BigInt::zero(); a.len() + 1];
    coeffs[0] = BigInt::from(1);
    for (j, &aj) in a.iter().enumerate() {
        let (h0, h1) = (h0_p1(aj), h1_p1(aj));
        for deg in (0..=j + 1).rev() {
            let mut v = &coeffs[deg] * h0;
            if deg > 0 {
                v += &coeffs[deg - 1] * h1;
            }
            coeffs[deg] = v;
        }
    }
    coeffs.swap_remove(i)
}

/// Cohomology table of `π_* O(a)` on `P^m`, `m = a.len()`.
pub fn pushforward_table(a: &MultiDegree) -> CohomologyTable {
    CohomologyTable::kunneth(a.0.clone())
}
