//! The lattice of rational cuspidal divisors on X0(N).
//!
//! A rational cuspidal divisor `sum a(d) (P_d)` is stored as its coefficient
//! vector in the divisor lattice, indexed by the canonical divisor order of
//! [`FactoredInteger`]. The lattice of level `N` is the tensor product of the
//! lattices of the prime powers `l^val_l(N)`, and the canonical order is the
//! Kronecker order of that product.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{euler_phi, FactoredInteger};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_value(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }
}

/// Signs `eps_i`, one per prime exactly dividing `N`, ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignVector(Vec<Sign>);

impl SignVector {
    pub fn new(signs: Vec<Sign>) -> Self {
        SignVector(signs)
    }

    pub fn from_values(values: &[i64]) -> Option<Self> {
        values.iter().map(|&v| Sign::from_value(v)).collect::<Option<Vec<_>>>().map(SignVector)
    }

    pub fn all_plus(t: usize) -> Self {
        SignVector(vec![Sign::Plus; t])
    }

    pub fn signs(&self) -> &[Sign] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_all_plus(&self) -> bool {
        self.0.iter().all(|&s| s == Sign::Plus)
    }

    /// Every sign vector of length `t`, lexicographic with `-1` before `+1`.
    pub fn enumerate(t: usize) -> Vec<SignVector> {
        (0..1usize << t)
            .map(|mask| {
                SignVector(
                    (0..t)
                        .map(|i| if mask >> (t - 1 - i) & 1 == 1 { Sign::Plus } else { Sign::Minus })
                        .collect(),
                )
            })
            .collect()
    }
}

impl fmt::Display for SignVector {
    /// Canonical form `+1,-1,...`; empty for `t = 0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<&str> = self.0.iter().map(|s| if *s == Sign::Plus { "+1" } else { "-1" }).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Checks that `(N, eps)` is admissible: the sign vector matches the
/// squarefree primes and the excluded case (squarefree `N`, all signs `+1`)
/// is not requested.
pub fn check_admissible(n: &FactoredInteger, eps: &SignVector) -> Result<()> {
    if eps.len() != n.t() {
        return Err(Error::SignLength { expected: n.t(), got: eps.len() });
    }
    if n.is_squarefree() && eps.is_all_plus() {
        return Err(Error::AllPlusSquarefree(n.value()));
    }
    Ok(())
}

/// `sum_d a(d) (P_d)` on X0(N).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CuspidalDivisor {
    level: FactoredInteger,
    coeffs: Vec<BigInt>,
}

impl CuspidalDivisor {
    pub fn zero(level: &FactoredInteger) -> Self {
        CuspidalDivisor { level: level.clone(), coeffs: vec![BigInt::zero(); level.num_divisors()] }
    }

    pub fn from_coeffs(level: &FactoredInteger, coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.len() != level.num_divisors() {
            return Err(Error::DimensionMismatch { expected: level.num_divisors(), got: coeffs.len() });
        }
        Ok(CuspidalDivisor { level: level.clone(), coeffs })
    }

    pub fn level(&self) -> &FactoredInteger {
        &self.level
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `(P_d)`; zero when `d` does not divide `N`.
    pub fn coeff(&self, d: u64) -> BigInt {
        self.level.divisor_index(d).map_or_else(BigInt::zero, |i| self.coeffs[i].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// `sum_d a(d) * phi(gcd(d, N/d))`.
    pub fn degree(&self) -> BigInt {
        let weights = degree_weights(&self.level);
        self.coeffs.iter().zip(weights).map(|(a, w)| a * BigInt::from(w)).sum()
    }

    /// Nonzero `(d, a(d))` pairs in canonical order.
    pub fn support(&self) -> Vec<(u64, BigInt)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(i, a)| (self.level.divisor_at(i), a.clone()))
            .collect()
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> Self {
        assert_eq!(self.level, other.level, "divisors live on different curves");
        CuspidalDivisor {
            level: self.level.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(a, b)).collect(),
        }
    }
}

impl Add for &CuspidalDivisor {
    type Output = CuspidalDivisor;
    fn add(self, rhs: Self) -> CuspidalDivisor {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &CuspidalDivisor {
    type Output = CuspidalDivisor;
    fn sub(self, rhs: Self) -> CuspidalDivisor {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &CuspidalDivisor {
    type Output = CuspidalDivisor;
    fn neg(self) -> CuspidalDivisor {
        CuspidalDivisor { level: self.level.clone(), coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }
}

impl Mul<&CuspidalDivisor> for &BigInt {
    type Output = CuspidalDivisor;
    fn mul(self, rhs: &CuspidalDivisor) -> CuspidalDivisor {
        CuspidalDivisor { level: rhs.level.clone(), coeffs: rhs.coeffs.iter().map(|a| self * a).collect() }
    }
}

/// `deg (P_d) = phi(gcd(d, N/d))` for every divisor, canonical order.
pub fn degree_weights(n: &FactoredInteger) -> Vec<u64> {
    let v = n.value();
    n.divisors().into_iter().map(|d| euler_phi(d.gcd(&(v / d)))).collect()
}

/// Kronecker product of coefficient vectors, first factor most significant.
pub fn tensor_vectors(factors: &[Vec<BigInt>]) -> Vec<BigInt> {
    factors.iter().fold(vec![BigInt::one()], |acc, w| {
        acc.iter().flat_map(|a| w.iter().map(move |b| a * b)).collect()
    })
}

/// The divisor `(P_d)`.
pub fn build_pd_divisor(n: &FactoredInteger, d: u64) -> Result<CuspidalDivisor> {
    let idx = n.divisor_index(d).ok_or(Error::NotADivisor { d, n: n.value() })?;
    let mut div = CuspidalDivisor::zero(n);
    div.coeffs[idx] = BigInt::one();
    Ok(div)
}

/// `C_d = phi(z) (P_1) - (P_d)`, a degree-zero divisor.
pub fn build_cd(n: &FactoredInteger, d: u64) -> Result<CuspidalDivisor> {
    let mut div = build_pd_divisor(n, d)?;
    let idx = n.divisor_index(d).unwrap();
    div.coeffs[idx] = -BigInt::one();
    let z = d.gcd(&(n.value() / d));
    div.coeffs[0] += BigInt::from(euler_phi(z));
    Ok(div)
}

/// The tensor factor of `C0^eps` attached to one prime power `l^r || N`.
fn c0_local_factor(prime: u64, exp: u32, sign: Option<Sign>) -> Vec<BigInt> {
    let mut w = vec![BigInt::zero(); exp as usize + 1];
    if exp == 1 {
        w[0] = BigInt::one();
        w[1] = BigInt::from(sign.expect("sign for squarefree prime").value());
    } else {
        w[0] = BigInt::from(prime - 1);
        w[1] = -BigInt::one();
    }
    w
}

/// `C0^eps`: the tensor product of `e_1 + eps_i e_l` over primes `l || N`
/// and `(l - 1) e_1 - e_l` over prime powers `l^r`, `r >= 2`.
pub fn build_c0(n: &FactoredInteger, eps: &SignVector) -> Result<CuspidalDivisor> {
    check_admissible(n, eps)?;
    let mut signs = eps.signs().iter();
    let factors: Vec<Vec<BigInt>> = n
        .factors()
        .iter()
        .map(|&(p, r)| c0_local_factor(p, r, if r == 1 { signs.next().copied() } else { None }))
        .collect();
    Ok(CuspidalDivisor { level: n.clone(), coeffs: tensor_vectors(&factors) })
}

/// Closed form of the coefficient `a(d)` of `C0^eps`: on squarefree `d`, the
/// product of `eps_i^{f_i}` over primes `l_i || N` and of `l_j - 1` or `-1`
/// (as `l_j` does not or does divide `d`) over `l_j^2 | N`; zero otherwise.
/// Does not check admissibility.
pub fn c0_coefficient(n: &FactoredInteger, eps: &SignVector, d: u64) -> BigInt {
    let mut signs = eps.signs().iter();
    let mut a = BigInt::one();
    for &(p, r) in n.factors() {
        let f = crate::arith::valuation(d, p);
        if f >= 2 {
            return BigInt::zero();
        }
        if r == 1 {
            let s = signs.next().expect("sign vector length");
            if f == 1 {
                a *= s.value();
            }
        } else if f == 0 {
            a *= BigInt::from(p - 1);
        } else {
            a = -a;
        }
    }
    a
}

/// Atkin-Lehner involution `w_l` for the `index`-th prime exactly dividing
/// `N`: on basis vectors it swaps the `l`-exponent of the level between 0 and 1.
pub fn atkin_lehner(n: &FactoredInteger, index: usize, div: &CuspidalDivisor) -> Result<CuspidalDivisor> {
    let primes = n.squarefree_primes();
    let prime = *primes.get(index).ok_or(Error::AtkinLehnerIndex { index, t: primes.len() })?;
    atkin_lehner_at_prime(n, prime, div)
}

/// [`atkin_lehner`] addressed by the prime itself.
pub fn atkin_lehner_at_prime(n: &FactoredInteger, prime: u64, div: &CuspidalDivisor) -> Result<CuspidalDivisor> {
    if &div.level != n {
        return Err(Error::DimensionMismatch { expected: n.num_divisors(), got: div.coeffs.len() });
    }
    let pos = n.prime_position(prime).ok_or(Error::PrimeDoesNotDivideLevel { prime, n: n.value() })?;
    if n.factors()[pos].1 != 1 {
        return Err(Error::NotExactDivisor { prime, n: n.value() });
    }
    let mut out = CuspidalDivisor::zero(n);
    for (i, a) in div.coeffs.iter().enumerate() {
        let mut exps = n.exponents_at(i);
        exps[pos] = 1 - exps[pos];
        out.coeffs[n.index_of_exponents(&exps)] = a.clone();
    }
    Ok(out)
}

/// Image of the basis vector at canonical index `index` of level `N` under
/// the pushforward `beta_l(M)_*` to level `M = N / l`: returns `(index in M, coefficient)`.
pub(crate) fn beta_basis_image(n: &FactoredInteger, m: &FactoredInteger, prime: u64, index: usize) -> (usize, u64) {
    let pos_n = n.prime_position(prime).expect("prime divides N");
    let r = m.valuation(prime);
    let exps = n.exponents_at(index);
    let g = exps[pos_n];
    // exponent vector of the target divisor without the l-part
    let mut target: Vec<u32> = n
        .factors()
        .iter()
        .zip(&exps)
        .filter(|(&(p, _), _)| p != prime)
        .map(|(_, &e)| e)
        .collect();
    let (f, coeff) = match g {
        0 => (0, 1),
        1 if r == 0 => (0, 1),
        1 => (0, prime - 1),
        _ => {
            let f = g - 1;
            // 0 < f < r/2  <=>  2f < r
            if 2 * f < r {
                (f, prime)
            } else {
                (f, 1)
            }
        }
    };
    if r > 0 {
        let pos_m = m.prime_position(prime).expect("l divides M when r > 0");
        target.insert(pos_m, f);
    }
    (m.index_of_exponents(&target), coeff)
}

/// Pushforward along the degeneracy map `beta_l(M): X0(N) -> X0(M)`, `M = N / l`.
pub fn beta_pushforward(n: &FactoredInteger, prime: u64, div: &CuspidalDivisor) -> Result<CuspidalDivisor> {
    let m = n.divide_by_prime(prime)?;
    if &div.level != n {
        return Err(Error::DimensionMismatch { expected: n.num_divisors(), got: div.coeffs.len() });
    }
    let mut out = CuspidalDivisor::zero(&m);
    for (i, a) in div.coeffs.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let (j, c) = beta_basis_image(n, &m, prime, i);
        out.coeffs[j] += a * BigInt::from(c);
    }
    Ok(out)
}
