//! Smith normal form and the cokernel of the degeneracy pushforward on
//! degree-zero divisor lattices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::FactoredInteger;
use crate::divisor::{beta_basis_image, degree_weights};
use crate::error::Result;
use crate::matrix::IntegerMatrix;

/// `U * M * V = S` with `U`, `V` unimodular and `S` diagonal,
/// `d_1 | d_2 | ...`, all `d_i >= 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntegerMatrix,
    pub s: IntegerMatrix,
    pub v: IntegerMatrix,
}

impl SmithForm {
    /// Diagonal of `S`, length `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols())).map(|i| self.s[(i, i)].clone()).collect()
    }
}

pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut s = m.clone();
    let mut u = IntegerMatrix::identity(rows);
    let mut v = IntegerMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = smallest_nonzero(&s, t) else {
                return SmithForm { u, s, v };
            };
            s.swap_rows(t, pi);
            u.swap_rows(t, pi);
            s.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                if s[(i, t)].is_zero() {
                    continue;
                }
                let q = -(&s[(i, t)] / &s[(t, t)]);
                s.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                clean &= s[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if s[(t, j)].is_zero() {
                    continue;
                }
                let q = -(&s[(t, j)] / &s[(t, t)]);
                s.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                clean &= s[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            // pivot must divide the rest of the block; otherwise fold the offending row in
            let offending = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !s[(i, j)].is_multiple_of(&s[(t, t)])));
            match offending {
                Some(i) => {
                    s.add_row_multiple(t, i, &BigInt::one());
                    u.add_row_multiple(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithForm { u, s, v }
}

fn smallest_nonzero(s: &IntegerMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..s.rows() {
        for j in t..s.cols() {
            let x = &s[(i, j)];
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs() < s[(bi, bj)].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Elementary divisors of the cokernel `Z^rows / M Z^cols` that differ from 1.
/// A rank deficiency shows up as a `0` (a free summand).
pub fn cokernel_invariants(m: &IntegerMatrix) -> Vec<BigInt> {
    let diag = smith_normal_form(m).diagonal();
    let mut out: Vec<BigInt> = diag.into_iter().filter(|d| !d.is_one()).collect();
    out.extend(std::iter::repeat_n(BigInt::zero(), m.rows().saturating_sub(m.cols())));
    out
}

/// Matrix of `beta_l(M)_*: S2(N) -> S2(M)`, `M = N / l`; column `k` is the
/// image of the `k`-th basis vector.
pub fn beta_matrix(n: &FactoredInteger, prime: u64) -> Result<IntegerMatrix> {
    let m = n.divide_by_prime(prime)?;
    let mut out = IntegerMatrix::zeros(m.num_divisors(), n.num_divisors());
    for k in 0..n.num_divisors() {
        let (row, coeff) = beta_basis_image(n, &m, prime, k);
        out[(row, k)] += BigInt::from(coeff);
    }
    Ok(out)
}

/// Integral basis of the degree-zero sublattice of `S2(N)`, as columns:
/// `e_d - deg(P_d) e_1` for every divisor `d != 1`. Coordinates of a
/// degree-zero vector in this basis are its entries at `d != 1`.
pub fn degree_zero_basis(n: &FactoredInteger) -> IntegerMatrix {
    let weights = degree_weights(n);
    let dim = n.num_divisors();
    let mut out = IntegerMatrix::zeros(dim, dim - 1);
    for k in 1..dim {
        out[(k, k - 1)] = BigInt::one();
        out[(0, k - 1)] = -BigInt::from(weights[k]);
    }
    out
}

/// Matrix of `beta` restricted to degree-zero sublattices, in the bases of [`degree_zero_basis`].
pub fn beta_degree_zero_matrix(n: &FactoredInteger, prime: u64) -> Result<IntegerMatrix> {
    let image = &beta_matrix(n, prime)? * &degree_zero_basis(n);
    let mut out = IntegerMatrix::zeros(image.rows() - 1, image.cols());
    for i in 1..image.rows() {
        for j in 0..image.cols() {
            out[(i - 1, j)] = image[(i, j)].clone();
        }
    }
    Ok(out)
}

/// Elementary divisors `> 1` of `Qdiv0(M) / beta(Qdiv0(N))`.
pub fn beta_cokernel_degree0(n: &FactoredInteger, prime: u64) -> Result<Vec<BigInt>> {
    Ok(cokernel_invariants(&beta_degree_zero_matrix(n, prime)?))
}
