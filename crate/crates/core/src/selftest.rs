//! Invariant sweeps over all admissible `(N, eps)` up to a bound.
//!
//! Each sweep reports how many cases it checked and the first failure, if
//! any. Levels are processed in parallel; results are ordered by level.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::arith::{factorize, is_prime, valuation_big, FactoredInteger};
use crate::divisor::{atkin_lehner, beta_pushforward, build_c0, degree_weights, SignVector};
use crate::index::index_value;
use crate::lattice::{beta_cokernel_degree0, beta_matrix};
use crate::order::{order_closed_form, order_matrix_path, prime_level_order};
use crate::qseries::{build_e0, hecke_t, hecke_u};
use crate::residue::{pre_numerator_index, residues};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub bound: u64,
    pub cases: usize,
    pub failure: Option<String>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

type CaseOutcome = std::result::Result<usize, String>;

fn sweep(name: &'static str, bound: u64, start: u64, check: impl Fn(&FactoredInteger) -> CaseOutcome + Sync) -> CheckResult {
    let outcomes: Vec<CaseOutcome> = (start..=bound)
        .into_par_iter()
        .map(|n| check(&factorize(n).expect("n >= 1")))
        .collect();
    let mut cases = 0;
    for outcome in outcomes {
        match outcome {
            Ok(c) => cases += c,
            Err(msg) => return CheckResult { name, bound, cases, failure: Some(msg) },
        }
    }
    CheckResult { name, bound, cases, failure: None }
}

fn admissible_signs(n: &FactoredInteger) -> Vec<SignVector> {
    SignVector::enumerate(n.t())
        .into_iter()
        .filter(|e| !(n.is_squarefree() && e.is_all_plus()))
        .collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

pub fn check_order_paths(bound: u64) -> CheckResult {
    sweep("order_two_path_agreement", bound, 1, |n| {
        let signs = admissible_signs(n);
        for e in &signs {
            let a = order_closed_form(n, e).map_err(|err| err.to_string())?;
            let b = order_matrix_path(n, e).map_err(|err| err.to_string())?;
            ensure(a == b, || format!("N={} eps={e}: closed form {a} != matrix path {b}", n.value()))?;
        }
        Ok(signs.len())
    })
}

pub fn check_prime_levels(bound: u64) -> CheckResult {
    sweep("prime_level_order", bound, 5, |n| {
        if !is_prime(n.value()) {
            return Ok(0);
        }
        let minus = SignVector::from_values(&[-1]).unwrap();
        let order = order_closed_form(n, &minus).map_err(|e| e.to_string())?;
        let expected = prime_level_order(n.value());
        ensure(order == expected, || format!("N={}: order {order} != {expected}", n.value()))?;
        Ok(1)
    })
}

pub fn check_divisor_eigen(bound: u64) -> CheckResult {
    sweep("c0_degree_and_annihilation", bound, 1, |n| {
        let signs = admissible_signs(n);
        for e in &signs {
            let c = build_c0(n, e).map_err(|err| err.to_string())?;
            ensure(c.degree().is_zero(), || format!("N={} eps={e}: nonzero degree", n.value()))?;
            for (i, s) in e.signs().iter().enumerate() {
                let w = atkin_lehner(n, i, &c).map_err(|err| err.to_string())?;
                ensure(w == &BigInt::from(s.value()) * &c, || format!("N={} eps={e}: w_{i} eigenvalue", n.value()))?;
            }
            for (p, _) in n.square_prime_powers() {
                let b = beta_pushforward(n, p, &c).map_err(|err| err.to_string())?;
                ensure(b.is_zero(), || format!("N={} eps={e}: beta_{p} C0 != 0", n.value()))?;
            }
        }
        Ok(signs.len())
    })
}

pub fn check_eisenstein(bound: u64, terms: usize) -> CheckResult {
    sweep("eisenstein_eigen_relations", bound, 1, |n| {
        let signs = admissible_signs(n);
        for e in &signs {
            let series = build_e0(n, e, terms).map_err(|err| err.to_string())?;
            ensure(series.coeff(1).is_one(), || format!("N={} eps={e}: a(1) != 1", n.value()))?;
            ensure(series.coeff(0).is_zero() != n.is_squarefree(), || {
                format!("N={} eps={e}: a(0) vanishing disagrees with squarefreeness", n.value())
            })?;
            for q in (2..=20u64).filter(|&q| is_prime(q) && n.value() % q != 0 && q as usize <= terms) {
                let tq = hecke_t(q, &series, n).map_err(|err| err.to_string())?;
                let expected = series.truncate(tq.truncation()).scale(&BigInt::from(q + 1));
                ensure(tq == expected, || format!("N={} eps={e}: T_{q} eigenvalue", n.value()))?;
            }
            for (p, _) in n.square_prime_powers() {
                if p as usize > terms {
                    continue;
                }
                let up = hecke_u(p, &series, n).map_err(|err| err.to_string())?;
                ensure(up.scaled_coeffs().iter().all(Zero::is_zero), || format!("N={} eps={e}: U_{p} E != 0", n.value()))?;
            }
        }
        Ok(signs.len())
    })
}

pub fn check_residues(bound: u64) -> CheckResult {
    sweep("residue_invariants", bound, 1, |n| {
        let signs = admissible_signs(n);
        let square_primes: BigInt = n.square_prime_powers().iter().map(|&(p, _)| BigInt::from(p)).product();
        for e in &signs {
            let table = residues(n, e).map_err(|err| err.to_string())?;
            ensure(table.weighted_sum().is_zero(), || format!("N={} eps={e}: weighted residue sum", n.value()))?;
            let at_rad = table.residue_at(n.radical()).expect("radical divides N");
            let expected = pre_numerator_index(n, e) / num_rational::BigRational::from_integer(square_primes.clone());
            ensure(num_traits::Signed::abs(at_rad) == expected, || format!("N={} eps={e}: residue at radical", n.value()))?;
            let a0 = build_e0(n, e, 1).map_err(|err| err.to_string())?.coeff(0);
            ensure(table.residue_at(n.value()) == Some(&-a0), || format!("N={} eps={e}: residue at infinity", n.value()))?;
        }
        Ok(signs.len())
    })
}

pub fn check_beta_cokernels(bound: u64) -> CheckResult {
    sweep("beta_cokernel_shape", bound, 2, |n| {
        for &(p, r) in n.factors() {
            let divisors = beta_cokernel_degree0(n, p).map_err(|err| err.to_string())?;
            ensure(divisors.iter().all(|d| *d == BigInt::from(p)), || {
                format!("N={} l={p}: elementary divisors {divisors:?}", n.value())
            })?;
            ensure(r >= 4 || divisors.is_empty(), || format!("N={} l={p}: nontrivial cokernel with val <= 3", n.value()))?;
            let b = beta_matrix(n, p).map_err(|err| err.to_string())?;
            let m = n.divide_by_prime(p).map_err(|err| err.to_string())?;
            let w_m: Vec<BigInt> = degree_weights(&m).into_iter().map(BigInt::from).collect();
            let w_n: Vec<BigInt> = degree_weights(n).into_iter().map(BigInt::from).collect();
            let pulled = b.transpose().mul_vec(&w_m).map_err(|err| err.to_string())?;
            ensure(pulled == w_n, || format!("N={} l={p}: degree not preserved", n.value()))?;
        }
        Ok(n.u())
    })
}

pub fn check_index_coherence(bound: u64) -> CheckResult {
    sweep("index_order_valuations", bound, 1, |n| {
        let signs = admissible_signs(n);
        let mut cases = 0;
        for e in &signs {
            let order = order_closed_form(n, e).map_err(|err| err.to_string())?;
            let index = index_value(n, e);
            // only primes dividing order * index can have nonzero valuation
            let product = &order * &index;
            for p in odd_prime_divisors(&product) {
                cases += 1;
                ensure(valuation_big(&order, p) == valuation_big(&index, p), || {
                    format!("N={} eps={e} p={p}: val(order) != val(index)", n.value())
                })?;
            }
        }
        Ok(cases)
    })
}

fn odd_prime_divisors(x: &BigInt) -> Vec<u64> {
    let mut rest: u64 = x.try_into().expect("orders at sweep scale fit in u64");
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            if p != 2 {
                out.push(p);
            }
            while rest.is_multiple_of(p) {
                rest /= p;
            }
        }
        p += 1;
    }
    if rest > 2 {
        out.push(rest);
    }
    out
}

/// Every sweep at the given level bound. The Eisenstein, residue and
/// cokernel sweeps stop at 200, 300 and 600 respectively.
pub fn run_all(bound: u64) -> Vec<CheckResult> {
    vec![
        check_prime_levels(bound),
        check_order_paths(bound),
        check_divisor_eigen(bound),
        check_eisenstein(bound.min(200), 200),
        check_residues(bound.min(300)),
        check_beta_cokernels(bound.min(600)),
        check_index_coherence(bound),
    ]
}
