//! Order of the class of `C0^eps` in J0(N), computed two ways.
//!
//! The closed form is `numerator(h/24 * prod (l_i + eps_i) * prod l_j^{r_j-2} (l_j^2 - 1))`.
//! The matrix path evaluates `numerator(kappa(N) * h / (24 * Gcd(C0^eps)))`
//! where `Gcd` is the gcd of the entries of `Upsilon(N) * C0^eps` and
//! `Upsilon(N)` is the tensor product of the local matrices `Upsilon(l^r)`.
//! Both must agree for every admissible `(N, eps)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{numerator_of, FactoredInteger};
use crate::divisor::{build_c0, check_admissible, CuspidalDivisor, SignVector};
use crate::error::{Error, Result};
use crate::matrix::IntegerMatrix;

fn big_pow(base: u64, exp: u32) -> BigInt {
    num_traits::pow(BigInt::from(base), exp as usize)
}

/// The `(r+1) x (r+1)` matrix `Upsilon(l^r)` indexed by `1, l, ..., l^r`.
///
/// Corners are `l`; inner diagonal entries are `l^{m(j)-1} (l^2 + 1)`;
/// the two off-diagonals are `-l^{m(j)}` with `j` the column index and
/// `m(f) = min(f, r - f)`; everything else is zero.
pub fn upsilon_matrix(prime: u64, r: u32) -> IntegerMatrix {
    assert!(r >= 1, "Upsilon(l^r) needs r >= 1");
    let size = r as usize + 1;
    let m = |f: usize| f.min(r as usize - f) as u32;
    let mut out = IntegerMatrix::zeros(size, size);
    for i in 0..size {
        for j in 0..size {
            out[(i, j)] = if i == j && (j == 0 || j == r as usize) {
                BigInt::from(prime)
            } else if i == j {
                big_pow(prime, m(j) - 1) * BigInt::from(prime * prime + 1)
            } else if i.abs_diff(j) == 1 {
                -big_pow(prime, m(j))
            } else {
                BigInt::zero()
            };
        }
    }
    out
}

/// `Upsilon(N)`, the Kronecker product of the local matrices in canonical divisor order.
pub fn upsilon_n(n: &FactoredInteger) -> IntegerMatrix {
    n.factors()
        .iter()
        .fold(IntegerMatrix::identity(1), |acc, &(p, r)| acc.kron(&upsilon_matrix(p, r)))
}

/// gcd of the entries of `Upsilon(N) * D`.
pub fn gcd_of_image(n: &FactoredInteger, div: &CuspidalDivisor) -> Result<BigInt> {
    if div.is_zero() {
        return Err(Error::ZeroDivisor);
    }
    let image = upsilon_n(n).mul_vec(div.coeffs())?;
    Ok(image.iter().fold(BigInt::zero(), |g, x| g.gcd(x)))
}

/// `kappa(N) = prod_{l || N} (l^2 - 1) * prod_{l^r || N, r >= 2} l^{r-1} (l^2 - 1)`.
pub fn kappa(n: &FactoredInteger) -> BigInt {
    n.factors()
        .iter()
        .map(|&(p, r)| big_pow(p, r - 1) * BigInt::from(p * p - 1))
        .product()
}

/// `h = 2` when `N` is a prime or a power of 2, else `1`.
pub fn h_of_c0(n: &FactoredInteger) -> u64 {
    if n.is_prime() || n.is_power_of_two() {
        2
    } else {
        1
    }
}

/// `prod (l_i + eps_i) * prod l_j^{r_j-2} (l_j^2 - 1)`, the integer shared
/// by the order and index formulas. No admissibility check.
pub(crate) fn index_product(n: &FactoredInteger, eps: &SignVector) -> BigInt {
    let mut signs = eps.signs().iter();
    n.factors()
        .iter()
        .map(|&(p, r)| {
            if r == 1 {
                BigInt::from(p as i64 + signs.next().expect("sign vector length").value())
            } else {
                big_pow(p, r - 2) * BigInt::from(p * p - 1)
            }
        })
        .product()
}

/// Order of `[C0^eps]` from the closed form.
pub fn order_closed_form(n: &FactoredInteger, eps: &SignVector) -> Result<BigInt> {
    check_admissible(n, eps)?;
    let value = BigRational::new(BigInt::from(h_of_c0(n)) * index_product(n, eps), BigInt::from(24));
    Ok(numerator_of(&value))
}

/// Order of `[C0^eps]` through `kappa`, `h` and the `Upsilon` matrix.
pub fn order_matrix_path(n: &FactoredInteger, eps: &SignVector) -> Result<BigInt> {
    let c0 = build_c0(n, eps)?;
    let gcd = gcd_of_image(n, &c0)?;
    let value = BigRational::new(kappa(n) * BigInt::from(h_of_c0(n)), BigInt::from(24) * gcd);
    Ok(numerator_of(&value))
}

/// Both order computations side by side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderReport {
    pub closed_form: BigInt,
    pub matrix_path: BigInt,
}

impl OrderReport {
    pub fn agree(&self) -> bool {
        self.closed_form == self.matrix_path
    }
}

pub fn order_report(n: &FactoredInteger, eps: &SignVector) -> Result<OrderReport> {
    Ok(OrderReport { closed_form: order_closed_form(n, eps)?, matrix_path: order_matrix_path(n, eps)? })
}

/// `numerator((N - 1) / 12)` for a prime `N`; the order of the cuspidal group of X0(N).
pub fn prime_level_order(prime: u64) -> BigInt {
    let r = BigRational::new(BigInt::from(prime) - BigInt::one(), BigInt::from(12));
    numerator_of(&r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::factorize;

    fn eps(v: &[i64]) -> SignVector {
        SignVector::from_values(v).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn local_upsilon_matrices() {
        assert_eq!(upsilon_matrix(11, 1), IntegerMatrix::from_rows(&[vec![11, -1], vec![-1, 11]]));
        assert_eq!(upsilon_matrix(2, 1), IntegerMatrix::from_rows(&[vec![2, -1], vec![-1, 2]]));
        // column-indexed off-diagonals: column 2 has m(2) = 0
        assert_eq!(
            upsilon_matrix(3, 2),
            IntegerMatrix::from_rows(&[vec![3, -3, 0], vec![-1, 10, -1], vec![0, -3, 3]])
        );
        // first two columns as displayed for r >= 2: (l, -1, 0, ...) and (-l, l^2+1, -l, 0, ...)
        let u = upsilon_matrix(5, 4);
        assert_eq!(u.column(0), ints(&[5, -1, 0, 0, 0]));
        assert_eq!(u.column(1), ints(&[-5, 26, -5, 0, 0]));
        assert_eq!(u.column(2), ints(&[0, -25, 130, -25, 0]));
    }

    #[test]
    fn upsilon_of_composite_levels() {
        assert_eq!(upsilon_n(&factorize(11).unwrap()), upsilon_matrix(11, 1));
        assert_eq!(upsilon_n(&factorize(9).unwrap()), upsilon_matrix(3, 2));
        let u6 = upsilon_n(&factorize(6).unwrap());
        assert_eq!(u6, upsilon_matrix(2, 1).kron(&upsilon_matrix(3, 1)));
        assert_eq!((u6.rows(), u6.cols()), (4, 4));
        assert_eq!(upsilon_n(&factorize(1).unwrap()), IntegerMatrix::identity(1));
    }

    #[test]
    fn gcd_examples() {
        let n11 = factorize(11).unwrap();
        let c = CuspidalDivisor::from_coeffs(&n11, ints(&[1, -1])).unwrap();
        assert_eq!(upsilon_n(&n11).mul_vec(c.coeffs()).unwrap(), ints(&[12, -12]));
        assert_eq!(gcd_of_image(&n11, &c).unwrap(), BigInt::from(12));

        let n9 = factorize(9).unwrap();
        let c = CuspidalDivisor::from_coeffs(&n9, ints(&[2, -1, 0])).unwrap();
        assert_eq!(upsilon_n(&n9).mul_vec(c.coeffs()).unwrap(), ints(&[9, -12, 3]));
        assert_eq!(gcd_of_image(&n9, &c).unwrap(), BigInt::from(3));

        assert_eq!(gcd_of_image(&n9, &CuspidalDivisor::zero(&n9)), Err(Error::ZeroDivisor));

        for p in [2u64, 3, 5, 7, 13, 101] {
            let f = factorize(p).unwrap();
            for s in [-1i64, 1] {
                let c = CuspidalDivisor::from_coeffs(&f, ints(&[1, s])).unwrap();
                assert_eq!(gcd_of_image(&f, &c).unwrap(), BigInt::from(p as i64 - s));
            }
        }
    }

    #[test]
    fn gcd_for_prime_powers_is_the_prime() {
        for (p, r) in [(2u64, 2u32), (2, 5), (3, 2), (3, 4), (5, 3), (7, 2)] {
            let f = factorize(p.pow(r)).unwrap();
            let c0 = build_c0(&f, &eps(&[])).unwrap();
            assert_eq!(gcd_of_image(&f, &c0).unwrap(), BigInt::from(p));
        }
    }

    #[test]
    fn kappa_and_h() {
        assert_eq!(kappa(&factorize(11).unwrap()), BigInt::from(120));
        assert_eq!(kappa(&factorize(9).unwrap()), BigInt::from(24));
        assert_eq!(kappa(&factorize(1).unwrap()), BigInt::from(1));
        assert_eq!(h_of_c0(&factorize(11).unwrap()), 2);
        assert_eq!(h_of_c0(&factorize(8).unwrap()), 2);
        assert_eq!(h_of_c0(&factorize(45).unwrap()), 1);
        assert_eq!(h_of_c0(&factorize(9).unwrap()), 1);
    }

    #[test]
    fn order_examples() {
        let n11 = factorize(11).unwrap();
        assert_eq!(order_closed_form(&n11, &eps(&[-1])).unwrap(), BigInt::from(5));
        assert_eq!(order_matrix_path(&n11, &eps(&[-1])).unwrap(), BigInt::from(5));
        let n9 = factorize(9).unwrap();
        assert_eq!(order_closed_form(&n9, &eps(&[])).unwrap(), BigInt::from(1));
        assert_eq!(order_matrix_path(&n9, &eps(&[])).unwrap(), BigInt::from(1));
        let n49 = factorize(49).unwrap();
        assert_eq!(order_closed_form(&n49, &eps(&[])).unwrap(), BigInt::from(2));
        assert_eq!(order_matrix_path(&n49, &eps(&[])).unwrap(), BigInt::from(2));
        let n45 = factorize(45).unwrap();
        assert!(order_report(&n45, &eps(&[1])).unwrap().agree());
        assert_eq!(order_closed_form(&n11, &eps(&[1])), Err(Error::AllPlusSquarefree(11)));
        assert_eq!(order_matrix_path(&n11, &eps(&[1])), Err(Error::AllPlusSquarefree(11)));
    }

    #[test]
    fn two_paths_agree_up_to_1000() {
        for n in 2..=1000u64 {
            let f = factorize(n).unwrap();
            for e in SignVector::enumerate(f.t()) {
                if f.is_squarefree() && e.is_all_plus() {
                    continue;
                }
                let report = order_report(&f, &e).unwrap();
                assert!(report.agree(), "N={n} eps={e}: {report:?}");
            }
        }
    }

    #[test]
    fn prime_levels_match_numerator_formula() {
        for p in (5..=1000u64).filter(|&p| crate::arith::is_prime(p)) {
            let order = order_closed_form(&factorize(p).unwrap(), &eps(&[-1])).unwrap();
            assert_eq!(order, prime_level_order(p));
        }
    }
}
