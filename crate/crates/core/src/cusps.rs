//! Cusps of X0(N), grouped by level.
//!
//! A cusp is written `(x d)` with `d | N` and `gcd(x, d) = 1`; two such
//! vectors are equivalent iff the levels agree and `x = y (mod z)` where
//! `z = gcd(d, N/d)`. The cusps of level `d` form a single Galois orbit of
//! size `phi(z)`, each defined over `Q(mu_z)`.

use num_integer::Integer;

use crate::arith::{euler_phi, FactoredInteger};

/// All cusps of one level `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CuspClass {
    pub level: u64,
    pub z: u64,
    pub orbit_size: u64,
    pub field_degree: u64,
    /// Smallest `x` in `1..=d`, coprime to `d`, for each unit class mod `z`; ascending.
    pub representatives: Vec<u64>,
}

impl CuspClass {
    fn new(n: u64, d: u64) -> Self {
        let z = d.gcd(&(n / d));
        let phi = euler_phi(z);
        let mut seen = vec![false; z as usize];
        let mut representatives = Vec::with_capacity(phi as usize);
        for x in 1..=d {
            if x.gcd(&d) != 1 {
                continue;
            }
            let class = (x % z) as usize;
            if !seen[class] {
                seen[class] = true;
                representatives.push(x);
                if representatives.len() as u64 == phi {
                    break;
                }
            }
        }
        CuspClass { level: d, z, orbit_size: phi, field_degree: phi, representatives }
    }
}

/// One [`CuspClass`] per divisor of `N`, in canonical divisor order.
pub fn enumerate_cusps(n: &FactoredInteger) -> Vec<CuspClass> {
    n.divisors().into_iter().map(|d| CuspClass::new(n.value(), d)).collect()
}

/// Total number of cusps, `sum_{d | N} phi(gcd(d, N/d))`.
pub fn cusp_count(n: &FactoredInteger) -> u64 {
    let v = n.value();
    n.divisors().into_iter().map(|d| euler_phi(d.gcd(&(v / d)))).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::factorize;

    #[test]
    fn level_nine() {
        let cusps = enumerate_cusps(&factorize(9).unwrap());
        let levels: Vec<_> = cusps.iter().map(|c| c.level).collect();
        let sizes: Vec<_> = cusps.iter().map(|c| c.orbit_size).collect();
        assert_eq!(levels, vec![1, 3, 9]);
        assert_eq!(sizes, vec![1, 2, 1]);
        assert_eq!(cusps[1].field_degree, 2);
        assert_eq!(cusps[1].representatives, vec![1, 2]);
        assert_eq!(cusp_count(&factorize(9).unwrap()), 4);
    }

    #[test]
    fn prime_level_has_zero_and_infinity() {
        let cusps = enumerate_cusps(&factorize(11).unwrap());
        assert_eq!(cusps.len(), 2);
        assert_eq!((cusps[0].level, cusps[1].level), (1, 11));
        assert!(cusps.iter().all(|c| c.field_degree == 1 && c.representatives == vec![1]));
        assert_eq!(cusp_count(&factorize(11).unwrap()), 2);
        assert_eq!(cusp_count(&factorize(1).unwrap()), 1);
    }

    #[test]
    fn level_twelve_is_all_rational() {
        let cusps = enumerate_cusps(&factorize(12).unwrap());
        assert_eq!(cusps.len(), 6);
        assert!(cusps.iter().all(|c| c.orbit_size == 1));
    }

    #[test]
    fn representatives_are_pairwise_inequivalent() {
        for n in 1..=400u64 {
            for c in enumerate_cusps(&factorize(n).unwrap()) {
                assert_eq!(c.representatives.len() as u64, c.orbit_size);
                let mut residues: Vec<_> = c.representatives.iter().map(|x| x % c.z).collect();
                residues.sort_unstable();
                residues.dedup();
                assert_eq!(residues.len(), c.representatives.len());
                assert!(c.representatives.iter().all(|&x| x >= 1 && x <= c.level && x.gcd(&c.level) == 1));
            }
        }
    }
}
