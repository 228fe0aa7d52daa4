//! Univariate polynomials with exact rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

/// Dense polynomial in one variable, coefficients stored lowest degree first.
/// Trailing zero coefficients are always trimmed, so the zero polynomial has
/// no coefficients at all.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Poly::from_coeffs(vec![BigRational::zero(), BigRational::one()])
    }

    /// `x + c`
    pub fn linear(c: BigRational) -> Self {
        Poly::from_coeffs(vec![c, BigRational::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_i64(&self, x: i64) -> BigRational {
        self.eval(&BigRational::from_integer(x.into()))
    }

    /// `p(a*x + b)`
    pub fn compose_affine(&self, a: &BigRational, b: &BigRational) -> Poly {
        let inner = Poly::from_coeffs(vec![b.clone(), a.clone()]);
        self.coeffs.iter().rev().fold(Poly::zero(), |acc, c| &(&acc * &inner) + &Poly::constant(c.clone()))
    }

    /// Distinct integer roots in increasing order, each with its multiplicity.
    ///
    /// Exact: the polynomial is cleared to a primitive integer polynomial and
    /// every candidate inside the Fujiwara bound (capped by the constant term,
    /// which any nonzero integer root divides) is tested by Horner evaluation.
    pub fn integer_roots(&self) -> Vec<(i64, usize)> {
        let mut ints = self.integer_coefficients();
        if ints.is_empty() {
            return Vec::new();
        }
        let mut roots = Vec::new();
        let zero_mult = ints.iter().take_while(|c| c.is_zero()).count();
        ints.drain(..zero_mult);
        if zero_mult > 0 {
            roots.push((0, zero_mult));
        }
        if ints.len() > 1 {
            let bound = root_bound(&ints);
            for r in 1..=bound {
                for cand in [-r, r] {
                    let mult = deflate_all(&mut ints, cand);
                    if mult > 0 {
                        roots.push((cand, mult));
                    }
                }
                if ints.len() <= 1 {
                    break;
                }
            }
        }
        roots.sort_unstable();
        roots
    }

    /// Scales by the lcm of the denominators.
    fn integer_coefficients(&self) -> Vec<BigInt> {
        let lcm = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        self.coeffs.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect()
    }
}

fn root_bound(ints: &[BigInt]) -> i64 {
    let deg = ints.len() - 1;
    let lead = ints[deg].abs();
    let mut best = BigInt::zero();
    for i in 1..=deg {
        let c = ints[deg - i].abs();
        if c.is_zero() {
            continue;
        }
        // ceil((|c| / |lead|)^(1/i))
        let q = c.div_ceil(&lead);
        let mut r = q.nth_root(i as u32);
        if r.pow(i as u32) < q {
            r += 1;
        }
        best = best.max(r);
    }
    let fujiwara: BigInt = best * 2u32;
    let b = fujiwara.min(ints[0].abs());
    b.to_i64().unwrap_or(i64::MAX)
}

/// Divides out `(x - r)` as often as it divides; returns the multiplicity.
fn deflate_all(ints: &mut Vec<BigInt>, r: i64) -> usize {
    let r = BigInt::from(r);
    let mut mult = 0;
    while ints.len() > 1 {
        // synthetic division, highest degree first
        let deg = ints.len() - 1;
        let mut quotient = vec![BigInt::zero(); deg];
        let mut carry = BigInt::zero();
        for i in (0..=deg).rev() {
            carry = &carry * &r + &ints[i];
            if i > 0 {
                quotient[i - 1] = carry.clone();
            }
        }
        if !carry.is_zero() {
            break;
        }
        *ints = quotient;
        mult += 1;
    }
    mult
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let zero = BigRational::zero();
        Poly::from_coeffs(
            (0..len).map(|i| self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero)).collect(),
        )
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::from_coeffs(out)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let a = c.abs();
            let show_coeff = i == 0 || !a.is_one();
            if show_coeff {
                write!(f, "{a}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "{}d", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}d^{i}", if show_coeff { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl Serialize for Poly {
    /// Coefficients lowest degree first, as "p/q" strings.
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter().map(|c| c.to_string()))
    }
}
