//! Truncated q-expansions with exact coefficients.
//!
//! Every series here has `24 * a(n)` integral, so coefficients are stored as
//! integers over the fixed denominator 24. The level-1 series `K` has
//! holomorphic expansion `-1/24 + sum sigma_1(n) q^n`; its non-holomorphic
//! term cancels in every combination built by [`build_e0`].

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{is_prime, sigma1_table, FactoredInteger};
use crate::divisor::{check_admissible, Sign, SignVector};
use crate::error::{Error, Result};

/// Coefficients `a(0..=T)` stored as `24 * a(n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactSeries {
    scaled: Vec<BigInt>,
}

impl ExactSeries {
    pub const DENOMINATOR: u64 = 24;

    /// Builds a series from the integers `24 * a(n)`, `n = 0..=T`.
    pub fn from_scaled(scaled: Vec<BigInt>) -> Self {
        assert!(!scaled.is_empty(), "a series needs at least a(0)");
        ExactSeries { scaled }
    }

    /// Truncation `T`: coefficients `a(0..=T)` are known.
    pub fn truncation(&self) -> usize {
        self.scaled.len() - 1
    }

    /// `24 * a(n)`.
    pub fn scaled_coeff(&self, n: usize) -> &BigInt {
        &self.scaled[n]
    }

    pub fn scaled_coeffs(&self) -> &[BigInt] {
        &self.scaled
    }

    pub fn coeff(&self, n: usize) -> BigRational {
        BigRational::new(self.scaled[n].clone(), BigInt::from(Self::DENOMINATOR))
    }

    /// `a(n)` for `n >= 1` when it is an integer.
    pub fn integer_coeff(&self, n: usize) -> Option<BigInt> {
        let c = self.coeff(n);
        c.is_integer().then(|| c.to_integer())
    }

    pub fn truncate(&self, t: usize) -> ExactSeries {
        ExactSeries { scaled: self.scaled[..=t.min(self.truncation())].to_vec() }
    }

    pub fn scale(&self, k: &BigInt) -> ExactSeries {
        ExactSeries { scaled: self.scaled.iter().map(|a| a * k).collect() }
    }

    /// `f(tau) -> f(l tau)`; truncation unchanged.
    pub fn v_scale(&self, l: u64) -> ExactSeries {
        let l = l as usize;
        let t = self.truncation();
        let scaled = (0..=t)
            .map(|n| if n % l == 0 { self.scaled[n / l].clone() } else { BigInt::zero() })
            .collect();
        ExactSeries { scaled }
    }

    /// Termwise linear combination, truncated to the shorter input.
    fn combine(&self, other: &ExactSeries, k: &BigInt) -> ExactSeries {
        let t = self.truncation().min(other.truncation());
        ExactSeries { scaled: (0..=t).map(|n| &self.scaled[n] + k * &other.scaled[n]).collect() }
    }

    /// `self + k * other`
    pub fn add_scaled(&self, other: &ExactSeries, k: i64) -> ExactSeries {
        self.combine(other, &BigInt::from(k))
    }
}

/// `K = -1/24 + sum_{n>=1} sigma_1(n) q^n` up to `q^T`.
pub fn series_k(t: usize) -> ExactSeries {
    let sigma = sigma1_table(t);
    let mut scaled: Vec<BigInt> = sigma.into_iter().map(|s| BigInt::from(s) * 24).collect();
    scaled[0] = -BigInt::one();
    ExactSeries { scaled }
}

/// `[l]^+ f = f(tau) + l f(l tau)` and `[l]^- f = f(tau) - l f(l tau)`.
pub fn raise_pm(l: u64, sign: Sign, f: &ExactSeries) -> ExactSeries {
    f.add_scaled(&f.v_scale(l), sign.value() * l as i64)
}

/// `[l^r]^0 f = f(tau) - (l+1) f(l tau) + l f(l^2 tau)`; independent of `r >= 2`.
pub fn raise_zero(l: u64, f: &ExactSeries) -> ExactSeries {
    let once = f.v_scale(l);
    let twice = once.v_scale(l);
    f.add_scaled(&once, -(l as i64 + 1)).add_scaled(&twice, l as i64)
}

/// `E0^eps`: `[l^r]^0` for every `l^r || N` with `r >= 2`, then `[l_i]^{eps_i}`
/// for every `l_i || N`, applied to `K`.
pub fn build_e0(n: &FactoredInteger, eps: &SignVector, t: usize) -> Result<ExactSeries> {
    check_admissible(n, eps)?;
    let mut series = series_k(t);
    for &(p, _) in n.square_prime_powers().iter().rev() {
        series = raise_zero(p, &series);
    }
    for (&p, &s) in n.squarefree_primes().iter().zip(eps.signs()).rev() {
        series = raise_pm(p, s, &series);
    }
    Ok(series)
}

/// `T_q` for a prime `q` not dividing `N`: `a(n) -> a(qn) + q a(n/q)`, truncated to `T/q`.
pub fn hecke_t(q: u64, f: &ExactSeries, n: &FactoredInteger) -> Result<ExactSeries> {
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    if n.value().is_multiple_of(q) {
        return Err(Error::PrimeDividesLevel { prime: q, n: n.value() });
    }
    let out_t = output_truncation(q, f)?;
    let qq = q as usize;
    let scaled = (0..=out_t)
        .map(|m| {
            let mut a = f.scaled[qq * m].clone();
            if m % qq == 0 {
                a += BigInt::from(q) * &f.scaled[m / qq];
            }
            a
        })
        .collect();
    Ok(ExactSeries { scaled })
}

/// `U_l` for a prime `l` dividing `N`: `a(n) -> a(l n)`, truncated to `T/l`.
pub fn hecke_u(l: u64, f: &ExactSeries, n: &FactoredInteger) -> Result<ExactSeries> {
    if !is_prime(l) {
        return Err(Error::NotPrime(l));
    }
    if !n.value().is_multiple_of(l) {
        return Err(Error::PrimeDoesNotDivideLevel { prime: l, n: n.value() });
    }
    let out_t = output_truncation(l, f)?;
    let ll = l as usize;
    Ok(ExactSeries { scaled: (0..=out_t).map(|m| f.scaled[ll * m].clone()).collect() })
}

fn output_truncation(q: u64, f: &ExactSeries) -> Result<usize> {
    let out = f.truncation() / q as usize;
    if out == 0 {
        return Err(Error::InsufficientTruncation { prime: q, have: f.truncation() });
    }
    Ok(out)
}
