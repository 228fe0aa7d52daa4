//! The wedge-pair map `Λ²W* → Λ⁴W* ⊕ Λ⁴W*` on a 5-dimensional space.
//!
//! For two 2-forms `η1, η2` the map `ω ↦ (ω∧η1, ω∧η2)` goes from a
//! 10-dimensional space to a 5+5-dimensional one, so it is a square 10×10
//! matrix; its kernel is always nonzero, which is what the trials check.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::parallel::{self, Execution};

pub const DIM: usize = 5;
pub const PAIRS: usize = 10;

/// Default seed for random trials.
pub const DEFAULT_SEED: u64 = 20_240_601;

/// Primes for the modular cross-check, tried in order.
const PRIMES: [u64; 4] = [2_305_843_009_213_693_951, 1_000_000_007, 998_244_353, 4_294_967_291];

/// Basis monomials `e_i∧e_j` (0-based `i < j`) in lexicographic order.
pub fn basis_pairs() -> [(usize, usize); PAIRS] {
    let mut out = [(0, 0); PAIRS];
    let mut k = 0;
    for i in 0..DIM {
        for j in i + 1..DIM {
            out[k] = (i, j);
            k += 1;
        }
    }
    out
}

fn pair_index(i: usize, j: usize) -> usize {
    basis_pairs().iter().position(|&p| p == (i, j)).expect("valid pair")
}

/// A 2-form `Σ c_ij e_i∧e_j` on a 5-dimensional space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoForm {
    coeffs: [BigRational; PAIRS],
}

impl TwoForm {
    pub fn zero() -> Self {
        TwoForm { coeffs: std::array::from_fn(|_| BigRational::zero()) }
    }

    /// `e_i∧e_j` with 1-based indices.
    pub fn monomial(i: usize, j: usize) -> Result<Self> {
        let mut f = TwoForm::zero();
        f.add_term(i, j, BigRational::one())?;
        Ok(f)
    }

    /// Adds `c · e_i∧e_j` (1-based, any order; `e_j∧e_i = -e_i∧e_j`).
    pub fn add_term(&mut self, i: usize, j: usize, c: BigRational) -> Result<()> {
        for x in [i, j] {
            if x == 0 || x > DIM {
                return Err(Error::IndexOutOfRange { index: x as i64, bound: DIM + 1 });
            }
        }
        if i == j {
            return Ok(());
        }
        let (a, b, c) = if i < j { (i - 1, j - 1, c) } else { (j - 1, i - 1, -c) };
        self.coeffs[pair_index(a, b)] += c;
        Ok(())
    }

    pub fn coeffs(&self) -> &[BigRational; PAIRS] {
        &self.coeffs
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        TwoForm { coeffs: std::array::from_fn(|k| &self.coeffs[k] * c) }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

impl Serialize for TwoForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let nonzero: Vec<_> = basis_pairs()
            .into_iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|((i, j), c)| ([i + 1, j + 1], c.to_string()))
            .collect();
        let mut seq = s.serialize_seq(Some(nonzero.len()))?;
        for item in &nonzero {
            seq.serialize_element(item)?;
        }
        seq.end()
    }
}

impl fmt::Display for TwoForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for ((i, j), c) in basis_pairs().into_iter().zip(&self.coeffs) {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            if !a.is_one() {
                write!(f, "{a}*")?;
            }
            write!(f, "e{}{}", i + 1, j + 1)?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Parses forms such as `e12 + e34`, `1/2*e12 - 3*e25` or `0`.
impl FromStr for TwoForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = |column: usize, message: &str| Error::Parse { line: 1, column, message: message.into() };
        let chars: Vec<char> = s.chars().collect();
        let mut pos = 0;
        let skip_ws = |pos: &mut usize| {
            while *pos < chars.len() && chars[*pos].is_whitespace() {
                *pos += 1;
            }
        };
        let mut form = TwoForm::zero();
        let mut first = true;
        skip_ws(&mut pos);
        if chars[pos..].iter().collect::<String>().trim() == "0" {
            return Ok(form);
        }
        loop {
            skip_ws(&mut pos);
            if pos >= chars.len() {
                if first {
                    return Err(err(pos + 1, "empty form"));
                }
                break;
            }
            let mut negative = false;
            if chars[pos] == '+' || chars[pos] == '-' {
                negative = chars[pos] == '-';
                pos += 1;
                skip_ws(&mut pos);
            } else if !first {
                return Err(err(pos + 1, "expected '+' or '-'"));
            }
            first = false;
            let start = pos;
            while pos < chars.len() && (chars[pos].is_ascii_digit() || chars[pos] == '/') {
                pos += 1;
            }
            let mut coeff = BigRational::one();
            if pos > start {
                let text: String = chars[start..pos].iter().collect();
                coeff = crate::tables::parse_rational(&text).ok_or_else(|| err(start + 1, "bad coefficient"))?;
                skip_ws(&mut pos);
                if pos < chars.len() && chars[pos] == '*' {
                    pos += 1;
                    skip_ws(&mut pos);
                }
            }
            if chars.get(pos) != Some(&'e') {
                return Err(err(pos + 1, "expected a monomial eij"));
            }
            let digit = |k: usize| chars.get(k).and_then(|c| c.to_digit(10)).map(|d| d as usize);
            let (i, j) = match (digit(pos + 1), digit(pos + 2)) {
                (Some(i), Some(j)) => (i, j),
                _ => return Err(err(pos + 2, "expected two indices after 'e'")),
            };
            if i == j {
                return Err(err(pos + 1, "repeated index in monomial"));
            }
            form.add_term(i, j, if negative { -coeff } else { coeff })
                .map_err(|_| err(pos + 2, "index out of range 1..5"))?;
            pos += 3;
        }
        Ok(form)
    }
}

/// Sign of the permutation sorting four distinct indices.
fn sort_sign(idx: [usize; 4]) -> i64 {
    let mut inversions = 0;
    for a in 0..4 {
        for b in a + 1..4 {
            if idx[a] > idx[b] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Position of the 4-subset with `missing` left out, in lexicographic order
/// of increasing 4-tuples.
fn quad_index(missing: usize) -> usize {
    DIM - 1 - missing
}

/// `ω∧η` for `ω = e_a∧e_b`, in the basis of `Λ⁴`.
fn wedge_column(a: usize, b: usize, eta: &TwoForm) -> [BigRational; DIM] {
    let mut out: [BigRational; DIM] = std::array::from_fn(|_| BigRational::zero());
    for ((c, d), v) in basis_pairs().into_iter().zip(eta.coeffs()) {
        if v.is_zero() || [c, d].iter().any(|x| *x == a || *x == b) {
            continue;
        }
        let missing = (0..DIM).find(|x| ![a, b, c, d].contains(x)).expect("four distinct of five");
        out[quad_index(missing)] += v * BigRational::from_integer(sort_sign([a, b, c, d]).into());
    }
    out
}

/// Matrix of `ω ↦ (ω∧η1, ω∧η2)`: rows are the two `Λ⁴` bases stacked,
/// columns the `Λ²` basis.
pub fn wedge_matrix(eta1: &TwoForm, eta2: &TwoForm) -> Vec<Vec<BigRational>> {
    let mut m = vec![vec![BigRational::zero(); PAIRS]; 2 * DIM];
    for (col, (a, b)) in basis_pairs().into_iter().enumerate() {
        for (block, eta) in [eta1, eta2].into_iter().enumerate() {
            for (r, v) in wedge_column(a, b, eta).into_iter().enumerate() {
                m[block * DIM + r][col] = v;
            }
        }
    }
    m
}

/// Scales every row to integers.
fn integer_rows(m: &[Vec<BigRational>]) -> Vec<Vec<BigInt>> {
    m.iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            row.iter().map(|v| (v * BigRational::from_integer(l.clone())).to_integer()).collect()
        })
        .collect()
}

/// Exact rank by Bareiss fraction-free elimination.
pub fn rank_rational(m: &[Vec<BigRational>]) -> usize {
    let mut a = integer_rows(m);
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let v = &a[rank][col] * &a[r][c] - &a[r][col] * &a[rank][c];
                a[r][c] = v / &prev;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Rank modulo `p`; `None` if some denominator vanishes mod `p`.
pub fn rank_mod_p(m: &[Vec<BigRational>], p: u64) -> Option<usize> {
    let pp = BigInt::from(p);
    let reduce = |v: &BigRational| -> Option<u128> {
        let den = v.denom().mod_floor(&pp).to_u128()?;
        if den == 0 {
            return None;
        }
        let num = v.numer().mod_floor(&pp).to_u128()?;
        Some(num * pow_mod(den, p as u128 - 2, p as u128) % p as u128)
    };
    let mut a: Vec<Vec<u128>> = m.iter().map(|row| row.iter().map(reduce).collect()).collect::<Option<_>>()?;
    let p = p as u128;
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = pow_mod(a[rank][col], p - 2, p);
        let (top, rest) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in rest {
            let f = mul_mod(row[col], inv, p);
            if f == 0 {
                continue;
            }
            for (x, &y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x = (*x + p - mul_mod(f, y, p)) % p;
            }
        }
        rank += 1;
    }
    Some(rank)
}

fn mul_mod(a: u128, b: u128, p: u128) -> u128 {
    // operands are below 2^62 for every prime in PRIMES
    (a % p) * (b % p) % p
}

fn pow_mod(mut b: u128, mut e: u128, p: u128) -> u128 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    r
}

/// Rank over `Q` together with whether some prime reproduced it.
pub fn cross_checked_rank(m: &[Vec<BigRational>]) -> (usize, bool) {
    let exact = rank_rational(m);
    let agrees = PRIMES.iter().any(|&p| rank_mod_p(m, p) == Some(exact));
    (exact, agrees)
}

/// `dim ker(Λ² → Λ⁴ ⊕ Λ⁴)`
pub fn kernel_dim(eta1: &TwoForm, eta2: &TwoForm) -> usize {
    PAIRS - rank_rational(&wedge_matrix(eta1, eta2))
}

/// A pair of forms with integer coefficients in `[-9, 9]`; trial `index`
/// uses its own stream of the seeded generator.
pub fn random_pair(seed: u64, index: u64) -> (TwoForm, TwoForm) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let mut draw =
        || TwoForm { coeffs: std::array::from_fn(|_| BigRational::from_integer(rng.gen_range(-9i64..=9).into())) };
    let a = draw();
    let b = draw();
    (a, b)
}

#[derive(Debug, Clone, Serialize)]
pub struct WedgeTrial {
    pub index: u64,
    pub eta1: TwoForm,
    pub eta2: TwoForm,
    pub kernel_dim: usize,
    pub modular_check: bool,
}

pub fn run_trial(eta1: TwoForm, eta2: TwoForm, index: u64) -> WedgeTrial {
    let m = wedge_matrix(&eta1, &eta2);
    let (rank, modular_check) = cross_checked_rank(&m);
    WedgeTrial { index, eta1, eta2, kernel_dim: PAIRS - rank, modular_check }
}

pub fn random_trials(seed: u64, trials: usize, exec: Execution) -> Vec<WedgeTrial> {
    parallel::map_range(exec, trials, |k| {
        let (a, b) = random_pair(seed, k as u64);
        run_trial(a, b, k as u64)
    })
}
