//! Eisenstein ideal indices and the applicability of the `p`-primary comparison
//! between the rational cuspidal divisor class group and rational torsion.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::arith::{is_prime, numerator_of, valuation_big, FactoredInteger};
use crate::divisor::SignVector;
use crate::error::{Error, Result};
use crate::order::{index_product, order_closed_form};

fn check_signs(n: &FactoredInteger, eps: &SignVector) -> Result<()> {
    if eps.len() != n.t() {
        return Err(Error::SignLength { expected: n.t(), got: eps.len() });
    }
    Ok(())
}

/// `numerator(1/24 * prod (l_i + eps_i))` for squarefree `N`.
pub fn n_eps(n: &FactoredInteger, eps: &SignVector) -> Result<BigInt> {
    if !n.is_squarefree() {
        return Err(Error::NotSquarefree(n.value()));
    }
    check_signs(n, eps)?;
    Ok(index_value(n, eps))
}

/// `numerator(1/24 * prod (l_i + eps_i) * prod l_j^{r_j-2} (l_j^2 - 1))` for non-squarefree `N`.
pub fn n0_eps(n: &FactoredInteger, eps: &SignVector) -> Result<BigInt> {
    if n.is_squarefree() {
        return Err(Error::Squarefree(n.value()));
    }
    check_signs(n, eps)?;
    Ok(index_value(n, eps))
}

/// `n^eps` or `n0^eps`, whichever applies to `N`.
pub fn index_value(n: &FactoredInteger, eps: &SignVector) -> BigInt {
    numerator_of(&BigRational::new(index_product(n, eps), BigInt::from(24)))
}

fn check_odd_prime(p: u64) -> Result<()> {
    if p == 2 {
        return Err(Error::EvenPrime);
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(())
}

/// Exponent `e` with `#C(N)[p^inf] = p^e` for squarefree `N`: the sum of
/// `val_p(n^eps)` over sign vectors, optionally skipping the all-plus one.
pub fn squarefree_class_number_p(n: &FactoredInteger, p: u64, include_all_plus: bool) -> Result<u32> {
    if !n.is_squarefree() {
        return Err(Error::NotSquarefree(n.value()));
    }
    check_odd_prime(p)?;
    Ok(SignVector::enumerate(n.t())
        .into_iter()
        .filter(|e| include_all_plus || !e.is_all_plus())
        .map(|e| valuation_big(&index_value(n, &e), p))
        .sum())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Applicability {
    Applicable,
    SquareDividesLevel,
    ThreeNeedsMinusOnePrime,
}

impl Applicability {
    pub fn is_applicable(&self) -> bool {
        *self == Applicability::Applicable
    }

    pub fn reason(&self) -> &'static str {
        match self {
            Applicability::Applicable => "hypotheses satisfied",
            Applicability::SquareDividesLevel => "p^2 divides N",
            Applicability::ThreeNeedsMinusOnePrime => {
                "p = 3 divides N and no prime divisor of N is congruent to -1 mod 3"
            }
        }
    }
}

/// Hypotheses for comparing `C(N)[p^inf]` with `J0(N)(Q)_tors[p^inf]`: `p`
/// odd, `p^2` not dividing `N`, and for `p = 3` either `3 | N` fails or
/// some prime divisor of `N` is `-1 mod 3`.
pub fn applicability(n: &FactoredInteger, p: u64) -> Applicability {
    if n.valuation(p) >= 2 {
        Applicability::SquareDividesLevel
    } else if p == 3 && n.value().is_multiple_of(3) && !n.factors().iter().any(|&(q, _)| q % 3 == 2) {
        Applicability::ThreeNeedsMinusOnePrime
    } else {
        Applicability::Applicable
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexRow {
    pub eps: SignVector,
    /// `n^eps` for squarefree `N`, `n0^eps` otherwise.
    pub index: BigInt,
    pub index_valuation: u32,
    /// `None` for the excluded all-plus sign vector on squarefree `N`.
    pub order: Option<BigInt>,
    pub order_valuation: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexReport {
    pub level: FactoredInteger,
    pub p: u64,
    pub applicability: Applicability,
    pub rows: Vec<IndexRow>,
}

impl IndexReport {
    /// `val_p(order) = val_p(index)` in every row with a defined order.
    pub fn rows_coherent(&self) -> bool {
        self.rows.iter().all(|r| r.order_valuation.is_none_or(|v| v == r.index_valuation))
    }
}

pub fn index_row(n: &FactoredInteger, eps: &SignVector, p: u64) -> Result<IndexRow> {
    check_signs(n, eps)?;
    let index = index_value(n, eps);
    let order = match order_closed_form(n, eps) {
        Ok(o) => Some(o),
        Err(Error::AllPlusSquarefree(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(IndexRow {
        eps: eps.clone(),
        index_valuation: valuation_big(&index, p),
        index,
        order_valuation: order.as_ref().map(|o| valuation_big(o, p)),
        order,
    })
}

/// Index and order rows for every sign vector, plus the applicability verdict.
pub fn main_theorem_report(n: &FactoredInteger, p: u64) -> Result<IndexReport> {
    check_odd_prime(p)?;
    let rows = SignVector::enumerate(n.t())
        .iter()
        .map(|e| index_row(n, e, p))
        .collect::<Result<Vec<_>>>()?;
    Ok(IndexReport { level: n.clone(), p, applicability: applicability(n, p), rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::factorize;

    fn eps(v: &[i64]) -> SignVector {
        SignVector::from_values(v).unwrap()
    }

    #[test]
    fn squarefree_indices() {
        let n11 = factorize(11).unwrap();
        assert_eq!(n_eps(&n11, &eps(&[-1])).unwrap(), BigInt::from(5));
        let n33 = factorize(33).unwrap();
        assert_eq!(n_eps(&n33, &eps(&[-1, -1])).unwrap(), BigInt::from(5));
        assert_eq!(n_eps(&n33, &eps(&[1, 1])).unwrap(), BigInt::from(2));
        assert_eq!(n_eps(&factorize(9).unwrap(), &eps(&[])), Err(Error::NotSquarefree(9)));
    }

    #[test]
    fn non_squarefree_indices() {
        let n50 = factorize(50).unwrap();
        assert_eq!(n0_eps(&n50, &eps(&[1])).unwrap(), BigInt::from(3));
        assert_eq!(n0_eps(&n50, &eps(&[-1])).unwrap(), BigInt::from(1));
        assert_eq!(n0_eps(&factorize(9).unwrap(), &eps(&[])).unwrap(), BigInt::from(1));
        assert_eq!(n0_eps(&factorize(33).unwrap(), &eps(&[1, 1])), Err(Error::Squarefree(33)));
        assert!(matches!(n0_eps(&n50, &eps(&[])), Err(Error::SignLength { .. })));
    }

    #[test]
    fn class_number_exponents() {
        let n33 = factorize(33).unwrap();
        let rows: Vec<_> = SignVector::enumerate(2).iter().map(|e| n_eps(&n33, e).unwrap()).collect();
        assert_eq!(rows, [5, 1, 5, 2].map(BigInt::from));
        assert_eq!(squarefree_class_number_p(&n33, 5, true).unwrap(), 2);
        assert_eq!(squarefree_class_number_p(&n33, 5, false).unwrap(), 2);
        let n11 = factorize(11).unwrap();
        assert_eq!(squarefree_class_number_p(&n11, 5, true).unwrap(), 1);
        assert_eq!(squarefree_class_number_p(&n11, 7, true).unwrap(), 0);
        assert_eq!(squarefree_class_number_p(&n11, 2, true), Err(Error::EvenPrime));
        assert_eq!(squarefree_class_number_p(&factorize(9).unwrap(), 5, true), Err(Error::NotSquarefree(9)));
    }

    #[test]
    fn applicability_verdicts() {
        // 9 | 45, so the square hypothesis fails before the mod-3 clause is consulted
        assert_eq!(applicability(&factorize(45).unwrap(), 3), Applicability::SquareDividesLevel);
        assert_eq!(applicability(&factorize(63).unwrap(), 3), Applicability::SquareDividesLevel);
        assert_eq!(applicability(&factorize(15).unwrap(), 3), Applicability::Applicable);
        assert_eq!(applicability(&factorize(21).unwrap(), 3), Applicability::ThreeNeedsMinusOnePrime);
        assert_eq!(applicability(&factorize(3).unwrap(), 3), Applicability::ThreeNeedsMinusOnePrime);
        assert_eq!(applicability(&factorize(7).unwrap(), 3), Applicability::Applicable);
        assert_eq!(applicability(&factorize(50).unwrap(), 3), Applicability::Applicable);
        assert_eq!(applicability(&factorize(50).unwrap(), 5), Applicability::SquareDividesLevel);
    }

    #[test]
    fn report_for_fifty() {
        let report = main_theorem_report(&factorize(50).unwrap(), 3).unwrap();
        assert!(report.applicability.is_applicable());
        let summary: Vec<_> = report.rows.iter().map(|r| (r.eps.to_string(), r.index.clone(), r.index_valuation)).collect();
        assert_eq!(summary, vec![("-1".to_string(), BigInt::from(1), 0), ("+1".to_string(), BigInt::from(3), 1)]);
        assert!(report.rows_coherent());
        assert_eq!(main_theorem_report(&factorize(50).unwrap(), 2), Err(Error::EvenPrime));
    }

    #[test]
    fn excluded_row_has_no_order() {
        let report = main_theorem_report(&factorize(33).unwrap(), 5).unwrap();
        assert_eq!(report.rows.len(), 4);
        assert!(report.rows[3].order.is_none());
        assert!(report.rows[..3].iter().all(|r| r.order.is_some()));
    }

    #[test]
    fn index_product_splits_over_coprime_factors() {
        for (a, b) in [(3u64, 7u64), (25, 21), (8, 15), (11, 49), (4, 9)] {
            let (fa, fb, fab) = (factorize(a).unwrap(), factorize(b).unwrap(), factorize(a * b).unwrap());
            for ea in SignVector::enumerate(fa.t()) {
                for eb in SignVector::enumerate(fb.t()) {
                    // align the combined sign vector with the ascending squarefree primes of ab
                    let mut tagged: Vec<(u64, _)> = fa.squarefree_primes().into_iter().zip(ea.signs().iter().copied()).collect();
                    tagged.extend(fb.squarefree_primes().into_iter().zip(eb.signs().iter().copied()));
                    tagged.sort_unstable();
                    let e = SignVector::new(tagged.into_iter().map(|(_, s)| s).collect());
                    assert_eq!(index_product(&fab, &e), index_product(&fa, &ea) * index_product(&fb, &eb));
                }
            }
        }
    }
}
