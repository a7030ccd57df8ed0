//! Factored levels and the elementary arithmetic functions used everywhere else.
//!
//! Divisors of a level are always listed in exponent-lexicographic order:
//! primes ascending, the first prime most significant. For `N = 12 = 2^2 * 3`
//! that is `1, 3, 2, 6, 4, 12`. Every lattice vector and matrix in the crate
//! is indexed in this order, which makes the tensor decomposition over prime
//! powers a mixed-radix index computation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Signed;

use crate::error::{Error, Result};

/// Exact rational number, always kept reduced with a positive denominator.
pub type ExactRational = BigRational;

/// A positive integer together with its prime factorization.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FactoredInteger {
    value: u64,
    factors: Vec<(u64, u32)>,
}

impl FactoredInteger {
    pub fn new(n: u64) -> Result<Self> {
        factorize(n)
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    /// `(prime, exponent)` pairs, primes ascending.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// Number of primes dividing `N` exactly once.
    pub fn t(&self) -> usize {
        self.factors.iter().filter(|&&(_, r)| r == 1).count()
    }

    /// Number of distinct primes dividing `N`.
    pub fn u(&self) -> usize {
        self.factors.len()
    }

    /// Product of the primes dividing `N` exactly once.
    pub fn n1(&self) -> u64 {
        self.factors.iter().filter(|&&(_, r)| r == 1).map(|&(p, _)| p).product()
    }

    /// Product of the prime powers `l^r` with `r >= 2`.
    pub fn n2(&self) -> u64 {
        self.factors
            .iter()
            .filter(|&&(_, r)| r >= 2)
            .map(|&(p, r)| p.pow(r))
            .product()
    }

    /// Primes exactly dividing `N`, ascending. A sign vector is aligned with this list.
    pub fn squarefree_primes(&self) -> Vec<u64> {
        self.factors.iter().filter(|&&(_, r)| r == 1).map(|&(p, _)| p).collect()
    }

    /// Prime powers `(l, r)` with `r >= 2`, ascending.
    pub fn square_prime_powers(&self) -> Vec<(u64, u32)> {
        self.factors.iter().copied().filter(|&(_, r)| r >= 2).collect()
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, r)| r == 1)
    }

    pub fn is_prime(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }

    pub fn is_power_of_two(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].0 == 2
    }

    pub fn radical(&self) -> u64 {
        self.factors.iter().map(|&(p, _)| p).product()
    }

    pub fn valuation(&self, p: u64) -> u32 {
        self.factors.iter().find(|&&(q, _)| q == p).map_or(0, |&(_, r)| r)
    }

    /// Position of `p` in [`factors`](Self::factors).
    pub fn prime_position(&self, p: u64) -> Option<usize> {
        self.factors.iter().position(|&(q, _)| q == p)
    }

    /// `sigma_0(N)`, the dimension of the divisor lattice.
    pub fn num_divisors(&self) -> usize {
        self.factors.iter().map(|&(_, r)| r as usize + 1).product()
    }

    /// All divisors in the canonical exponent-lexicographic order.
    pub fn divisors(&self) -> Vec<u64> {
        (0..self.num_divisors()).map(|i| self.divisor_at(i)).collect()
    }

    /// Exponent vector of the divisor at canonical index `index`.
    pub fn exponents_at(&self, index: usize) -> Vec<u32> {
        let mut exps = vec![0; self.factors.len()];
        let mut rest = index;
        for (k, &(_, r)) in self.factors.iter().enumerate().rev() {
            let radix = r as usize + 1;
            exps[k] = (rest % radix) as u32;
            rest /= radix;
        }
        exps
    }

    /// Canonical index of the divisor with the given exponent vector.
    pub fn index_of_exponents(&self, exps: &[u32]) -> usize {
        debug_assert_eq!(exps.len(), self.factors.len());
        self.factors
            .iter()
            .zip(exps)
            .fold(0, |acc, (&(_, r), &e)| acc * (r as usize + 1) + e as usize)
    }

    pub fn divisor_at(&self, index: usize) -> u64 {
        self.factors
            .iter()
            .zip(self.exponents_at(index))
            .map(|(&(p, _), e)| p.pow(e))
            .product()
    }

    /// Canonical index of `d`, or `None` when `d` does not divide `N`.
    pub fn divisor_index(&self, d: u64) -> Option<usize> {
        if d == 0 || !self.value.is_multiple_of(d) {
            return None;
        }
        let exps: Vec<u32> = self.factors.iter().map(|&(p, _)| valuation(d, p)).collect();
        Some(self.index_of_exponents(&exps))
    }

    /// The level `N / p` with its factorization, for a prime `p | N`.
    pub fn divide_by_prime(&self, p: u64) -> Result<FactoredInteger> {
        let pos = self
            .prime_position(p)
            .ok_or(Error::PrimeDoesNotDivideLevel { prime: p, n: self.value })?;
        let mut factors = self.factors.clone();
        if factors[pos].1 == 1 {
            factors.remove(pos);
        } else {
            factors[pos].1 -= 1;
        }
        Ok(FactoredInteger { value: self.value / p, factors })
    }
}

/// Trial-division factorization.
pub fn factorize(n: u64) -> Result<FactoredInteger> {
    if n == 0 {
        return Err(Error::ZeroLevel);
    }
    let mut factors = Vec::new();
    let mut rest = n;
    let mut p = 2u64;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            let mut r = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                r += 1;
            }
            factors.push((p, r));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    Ok(FactoredInteger { value: n, factors })
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            return false;
        }
        p += 1;
    }
    true
}

/// Exponent of the prime `p` in `n` (`n >= 1`).
pub fn valuation(mut n: u64, p: u64) -> u32 {
    debug_assert!(n > 0 && p > 1);
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

/// `p`-adic valuation of a nonzero big integer.
pub fn valuation_big(n: &BigInt, p: u64) -> u32 {
    debug_assert!(p > 1);
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    if n == BigInt::from(0) {
        return 0;
    }
    loop {
        let (q, r) = n.div_rem(&p);
        if r != BigInt::from(0) {
            return v;
        }
        n = q;
        v += 1;
    }
}

pub fn euler_phi(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let f = factorize(n).expect("n > 0");
    f.factors().iter().map(|&(p, r)| (p - 1) * p.pow(r - 1)).product()
}

pub fn sigma1(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let f = factorize(n).expect("n > 0");
    f.factors()
        .iter()
        .map(|&(p, r)| (p.pow(r + 1) - 1) / (p - 1))
        .product()
}

/// `sigma_1(n)` for every `0 <= n <= limit` (with `sigma_1(0) = 0`).
pub fn sigma1_table(limit: usize) -> Vec<u64> {
    let mut table = vec![0u64; limit + 1];
    for d in 1..=limit {
        for m in (d..=limit).step_by(d) {
            table[m] += d as u64;
        }
    }
    table
}

/// Absolute value of the reduced numerator.
pub fn numerator_of(r: &ExactRational) -> BigInt {
    r.numer().abs()
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}
