//! Cohomology of twisted homogeneous bundles `S_λ Q (d)` on `P^n`.
//!
//! Weights follow the dotted-Weyl convention
//! `β = (λ_{n-1}+n, λ_{n-2}+n-1, …, λ_0+1, -d)`: a repeated entry kills all
//! cohomology, otherwise the single nonzero group sits in degree equal to
//! the number of inversions of `β` and has the dimension of the `GL_{n+1}`
//! representation `sort(β) - (n, n-1, …, 0)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::partitions::{schur_dim, GenPartition};
use crate::poly::Poly;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum BottResult {
    Zero,
    Nonzero { degree: usize, dim: BigInt },
}

impl BottResult {
    /// `h^i`, zero unless `i` is the nonvanishing degree.
    pub fn h(&self, i: usize) -> BigInt {
        match self {
            BottResult::Nonzero { degree, dim } if *degree == i => dim.clone(),
            _ => BigInt::from(0),
        }
    }
}

fn check_rank(n: usize, lambda: &GenPartition) -> Result<()> {
    if lambda.n() != n {
        return Err(Error::LengthMismatch { expected: n, got: lambda.n() });
    }
    Ok(())
}

/// The first `n` entries of `β`, i.e. `λ_{n-1}+n, …, λ_0+1`.
fn rho_shifted(lambda: &GenPartition) -> Vec<i64> {
    let n = lambda.n() as i64;
    lambda.parts().iter().enumerate().map(|(i, p)| p + n - i as i64).collect()
}

/// All cohomology of `S_λ Q (d)` on `P^n`.
pub fn bott_cohomology(n: usize, lambda: &GenPartition, d: i64) -> Result<BottResult> {
    check_rank(n, lambda)?;
    let mut beta = rho_shifted(lambda);
    beta.push(-d);
    let mut sorted = beta.clone();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Ok(BottResult::Zero);
    }
    let mut inversions = 0;
    for i in 0..beta.len() {
        for j in i + 1..beta.len() {
            if beta[i] < beta[j] {
                inversions += 1;
            }
        }
    }
    let mu: Vec<i64> = sorted.iter().enumerate().map(|(i, b)| b - (n - i) as i64).collect();
    let dim = schur_dim(&mu, n + 1)?;
    Ok(BottResult::Nonzero { degree: inversions, dim })
}

/// `reg^k S_λ Q = -λ_k`.
pub fn homogeneous_reg(lambda: &GenPartition, k: usize) -> Result<i64> {
    if k >= lambda.n() {
        return Err(Error::IndexOutOfRange { index: k as i64, bound: lambda.n() });
    }
    Ok(-lambda.part(k))
}

/// `χ(S_λ Q (d))` as a polynomial in `d`: the Weyl product with the last
/// weight `-d` left symbolic.
pub fn chi_polynomial(n: usize, lambda: &GenPartition) -> Result<Poly> {
    check_rank(n, lambda)?;
    let beta = rho_shifted(lambda);
    let mut constant = BigRational::from_integer(1.into());
    for i in 0..n {
        for j in i + 1..n {
            constant *= BigRational::new((beta[i] - beta[j]).into(), ((j - i) as i64).into());
        }
    }
    let mut chi = Poly::constant(constant);
    for (i, b) in beta.iter().enumerate() {
        // (β_i - (-d)) / (n - i), indices 0-based with β_n = -d
        let factor = Poly::linear(BigRational::from_integer((*b).into()))
            .scale(&BigRational::new(1.into(), ((n - i) as i64).into()));
        chi = &chi * &factor;
    }
    Ok(chi)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> GenPartition {
        s.parse().unwrap()
    }

    fn nz(degree: usize, dim: i64) -> BottResult {
        BottResult::Nonzero { degree, dim: dim.into() }
    }

    #[test]
    fn examples() {
        assert_eq!(bott_cohomology(2, &p("0,0"), 3).unwrap(), nz(0, 10));
        // S_{1,0}Q(-2) = Ω¹
        assert_eq!(bott_cohomology(2, &p("1,0"), -2).unwrap(), nz(1, 1));
        assert_eq!(bott_cohomology(2, &p("1,0"), -3).unwrap(), BottResult::Zero);
        // Q itself has n+1 sections
        assert_eq!(bott_cohomology(3, &p("1,0,0"), 0).unwrap(), nz(0, 4));
        assert!(matches!(bott_cohomology(3, &p("1,0"), 0), Err(Error::LengthMismatch { .. })));
    }

    fn binom(n: i64, k: i64) -> i64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn line_bundles() {
        for n in 1..=5usize {
            let o = GenPartition::constant(n, 0);
            for d in 0..8 {
                assert_eq!(bott_cohomology(n, &o, d).unwrap(), nz(0, binom(n as i64 + d, n as i64)));
            }
            assert_eq!(bott_cohomology(n, &o, -(n as i64) - 1).unwrap(), nz(n, 1));
            for d in -(n as i64)..0 {
                assert_eq!(bott_cohomology(n, &o, d).unwrap(), BottResult::Zero);
            }
        }
    }

    #[test]
    fn twisted_forms() {
        // Λ^p Q^* = Ω^p(p) = S_{(0^{n-p}, (-1)^p)}Q, and h^p(Ω^p) = 1
        for n in 2..=4usize {
            for pdeg in 0..=n {
                let parts: Vec<i64> = (0..n).map(|i| if i < n - pdeg { 0 } else { -1 }).collect();
                let lam = GenPartition::new(parts).unwrap();
                let r = bott_cohomology(n, &lam, -(pdeg as i64)).unwrap();
                assert_eq!(r, nz(pdeg, 1), "n={n} p={pdeg}");
            }
        }
    }

    #[test]
    fn homogeneous_reg_examples() {
        assert_eq!(homogeneous_reg(&p("0,0"), 0).unwrap(), 0);
        assert_eq!(homogeneous_reg(&p("1,0"), 1).unwrap(), -1);
        assert_eq!(homogeneous_reg(&p("7,5,2,2,0,0"), 3).unwrap(), -2);
        assert_eq!(homogeneous_reg(&p("7,5,2,2,0,0"), 4).unwrap(), -5);
        assert!(homogeneous_reg(&p("1,0"), 2).is_err());
    }

    #[test]
    fn chi_examples() {
        let chi = chi_polynomial(2, &p("0,0")).unwrap();
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(chi, Poly::from_i64(&[2, 3, 1]).scale(&half));
        assert_eq!(chi_polynomial(2, &p("1,0")).unwrap().eval_i64(-2), BigRational::from_integer((-1).into()));
        let roots = chi_polynomial(3, &p("0,0,0")).unwrap().integer_roots();
        assert_eq!(roots, vec![(-3, 1), (-2, 1), (-1, 1)]);
    }

    #[test]
    fn chi_matches_alternating_sum() {
        for lam in ["2,1,0", "3,3,-1", "0,0,0", "4,0,-2"] {
            let lam = p(lam);
            let chi = chi_polynomial(3, &lam).unwrap();
            for d in -12..8 {
                let alt: BigInt = match bott_cohomology(3, &lam, d).unwrap() {
                    BottResult::Zero => 0.into(),
                    BottResult::Nonzero { degree, dim } => {
                        if degree % 2 == 0 {
                            dim
                        } else {
                            -dim
                        }
                    }
                };
                assert_eq!(chi.eval_i64(d), BigRational::from_integer(alt), "{lam} d={d}");
            }
        }
    }
}
