//! Exact computations with the rational cuspidal divisors of X0(N).
//!
//! The crate covers the cusps of X0(N) by level, the lattice of rational
//! cuspidal divisors and the distinguished divisor `C0^eps`, the order of
//! its class (by a closed form and by an independent matrix route), the
//! Eisenstein series `E0^eps` with Hecke operators on its q-expansion, the
//! residues of `E0^eps` at the cusps, cokernels of the degeneracy pushforward
//! on degree-zero divisors, and Eisenstein ideal indices.
//!
//! All arithmetic is exact.

pub mod arith;
pub mod cusps;
pub mod divisor;
pub mod error;
pub mod index;
pub mod lattice;
pub mod matrix;
pub mod order;
pub mod qseries;
pub mod residue;
pub mod selftest;

pub use arith::{factorize, ExactRational, FactoredInteger};
pub use cusps::{cusp_count, enumerate_cusps, CuspClass};
pub use divisor::{
    atkin_lehner, beta_pushforward, build_c0, build_cd, build_pd_divisor, CuspidalDivisor, Sign, SignVector,
};
pub use error::{Error, Result};
pub use index::{main_theorem_report, n0_eps, n_eps, squarefree_class_number_p, IndexReport};
pub use lattice::{beta_cokernel_degree0, beta_matrix, smith_normal_form, SmithForm};
pub use matrix::IntegerMatrix;
pub use order::{order_closed_form, order_matrix_path};
pub use qseries::{build_e0, hecke_t, hecke_u, series_k, ExactSeries};
pub use residue::{residues, ResidueTable};
