//! Residues of `E0^eps` at the cusps of X0(N).
//!
//! All cusps of one level share a residue. At a squarefree level
//! `d = prod l_k^{f_k}` it is
//!
//! ```text
//! 1/24 * prod_{l_i || N} eps_i^{f_i} (l_i + eps_i)
//!      * prod_{l_j^{r_j} || N, r_j >= 2} l_j^{r_j - 3} (1 - l_j^2) (1 - l_j)^{1 - f_j}
//! ```
//!
//! and it vanishes at every non-squarefree level.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{valuation, ExactRational, FactoredInteger};
use crate::cusps::enumerate_cusps;
use crate::divisor::{check_admissible, SignVector};
use crate::error::Result;
use crate::order::index_product;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueRow {
    pub level: u64,
    pub orbit_size: u64,
    pub residue: ExactRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueTable {
    pub level: FactoredInteger,
    pub eps: SignVector,
    pub rows: Vec<ResidueRow>,
}

impl ResidueTable {
    /// `sum_d phi(z_d) * res(d)`; zero for the residues of a form on a complete curve.
    pub fn weighted_sum(&self) -> ExactRational {
        self.rows
            .iter()
            .map(|r| &r.residue * BigRational::from_integer(r.orbit_size.into()))
            .fold(BigRational::zero(), |acc, x| acc + x)
    }

    pub fn residue_at(&self, level: u64) -> Option<&ExactRational> {
        self.rows.iter().find(|r| r.level == level).map(|r| &r.residue)
    }
}

fn pow_rational(base: i64, exp: i32) -> BigRational {
    let b = BigRational::from_integer(base.into());
    if exp >= 0 {
        num_traits::pow(b, exp as usize)
    } else {
        num_traits::pow(b.recip(), (-exp) as usize)
    }
}

/// Residue of `E0^eps` at any cusp of level `d`. No admissibility check.
pub fn residue_at_level(n: &FactoredInteger, eps: &SignVector, d: u64) -> ExactRational {
    let mut signs = eps.signs().iter();
    let mut value = BigRational::new(BigInt::one(), BigInt::from(24));
    for &(p, r) in n.factors() {
        let f = valuation(d, p);
        if f >= 2 {
            return BigRational::zero();
        }
        let p = p as i64;
        if r == 1 {
            let s = signs.next().expect("sign vector length").value();
            let sign_power = if f == 1 { s } else { 1 };
            value *= BigRational::from_integer((sign_power * (p + s)).into());
        } else {
            value *= pow_rational(p, r as i32 - 3)
                * BigRational::from_integer((1 - p * p).into())
                * pow_rational(1 - p, 1 - f as i32);
        }
    }
    value
}

pub fn residues(n: &FactoredInteger, eps: &SignVector) -> Result<ResidueTable> {
    check_admissible(n, eps)?;
    let rows = enumerate_cusps(n)
        .into_iter()
        .map(|c| ResidueRow { level: c.level, orbit_size: c.orbit_size, residue: residue_at_level(n, eps, c.level) })
        .collect();
    Ok(ResidueTable { level: n.clone(), eps: eps.clone(), rows })
}

/// `1/24 * prod (l_i + eps_i) * prod l_j^{r_j-2} (l_j^2 - 1)` before taking the numerator.
pub fn pre_numerator_index(n: &FactoredInteger, eps: &SignVector) -> ExactRational {
    BigRational::new(index_product(n, eps), BigInt::from(24))
}
