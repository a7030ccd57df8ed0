//! `E0^eps` and its Hecke eigen-relations against a direct divisor-sum oracle.
//!
//! The oracle expands `E0^eps = sum_delta c(delta) K(q^delta)` with local
//! weights `{1: 1, l: eps l}` for `l || N` and `{1: 1, l: -(l+1), l^2: l}`
//! for `l^2 | N`, then evaluates `a(n) = sum_delta c(delta) sigma_1(n/delta)`
//! in machine integers.

use cuspidal_core::{build_e0, factorize, hecke_t, hecke_u, FactoredInteger, SignVector};
use num_bigint::BigInt;
use num_rational::BigRational;

const LEVELS: [u64; 10] = [12, 18, 20, 45, 50, 63, 98, 99, 121, 147];
const TERMS: usize = 1000;

fn sigma1(n: usize) -> i128 {
    (1..=n).filter(|d| n.is_multiple_of(*d)).map(|d| d as i128).sum()
}

fn oracle_weights(n: &FactoredInteger, eps: &SignVector) -> Vec<(usize, i128)> {
    let mut weights = vec![(1usize, 1i128)];
    let mut signs = eps.signs().iter();
    for &(p, r) in n.factors() {
        let p = p as i128;
        let local: Vec<(usize, i128)> = if r == 1 {
            vec![(1, 1), (p as usize, signs.next().unwrap().value() as i128 * p)]
        } else {
            vec![(1, 1), (p as usize, -(p + 1)), ((p * p) as usize, p)]
        };
        weights = weights.iter().flat_map(|&(d, c)| local.iter().map(move |&(e, w)| (d * e, c * w))).collect();
    }
    weights
}

fn oracle_coeff(weights: &[(usize, i128)], n: usize) -> i128 {
    weights.iter().filter(|(d, _)| n.is_multiple_of(*d)).map(|&(d, c)| c * sigma1(n / d)).sum()
}

fn admissible(n: &FactoredInteger) -> Vec<SignVector> {
    SignVector::enumerate(n.t()).into_iter().filter(|e| !(n.is_squarefree() && e.is_all_plus())).collect()
}

fn primes_up_to(b: u64) -> Vec<u64> {
    (2..=b).filter(|&p| (2..p).all(|d| p % d != 0)).collect()
}

#[test]
fn coefficients_match_divisor_sum_oracle() {
    for &n in &LEVELS {
        let f = factorize(n).unwrap();
        for e in admissible(&f) {
            let series = build_e0(&f, &e, 300).unwrap();
            let weights = oracle_weights(&f, &e);
            for k in 1..=300 {
                assert_eq!(series.coeff(k), BigRational::from_integer(oracle_coeff(&weights, k).into()), "N={n} eps={e} n={k}");
            }
            let c0: i128 = weights.iter().map(|&(_, c)| c).sum();
            assert_eq!(series.coeff(0), BigRational::new((-c0).into(), 24.into()));
        }
    }
}

#[test]
fn hecke_eigen_relations_on_test_levels() {
    for &n in &LEVELS {
        let f = factorize(n).unwrap();
        for e in admissible(&f) {
            let series = build_e0(&f, &e, TERMS).unwrap();
            assert_eq!(series.coeff(1), BigRational::from_integer(1.into()));
            for q in primes_up_to(20).into_iter().filter(|q| n % q != 0) {
                let tq = hecke_t(q, &series, &f).unwrap();
                assert_eq!(tq.truncation(), TERMS / q as usize);
                assert_eq!(tq, series.truncate(TERMS / q as usize).scale(&BigInt::from(q + 1)), "N={n} eps={e} q={q}");
            }
            for (p, _) in f.square_prime_powers() {
                let up = hecke_u(p, &series, &f).unwrap();
                assert_eq!(up.truncation(), TERMS / p as usize);
                assert!(up.scaled_coeffs().iter().all(|a| *a == BigInt::from(0)), "N={n} eps={e} U_{p}");
            }
        }
    }
}

#[test]
fn higher_coefficients_are_integers() {
    for &n in &LEVELS {
        let f = factorize(n).unwrap();
        for e in admissible(&f) {
            let series = build_e0(&f, &e, 200).unwrap();
            assert!((1..=200).all(|k| series.integer_coeff(k).is_some()));
        }
    }
}
