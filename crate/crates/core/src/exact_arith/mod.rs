//! Exact integer arithmetic, roots of unity as angles in Q/Z, and the Smith
//! normal form engine used by abelianization.

mod bezout;
mod int_matrix;
mod root;
mod smith;

pub use bezout::{gcd_bezout, multi_bezout, Bezout};
pub use int_matrix::{IntMatrix, MatrixError};
pub use root::{enumerate_roots, RootOfUnity, Sign};
pub use smith::{smith_normal_form, SmithDecomposition};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    /// `gcd(N/n_1, ..., N/n_r) != 1`, equivalently some pair of exponents
    /// shares a factor.
    #[error("exponents are not pairwise coprime (gcd of cofactors is {gcd})")]
    NotCoprime { gcd: num_bigint::BigInt },
    #[error("empty input")]
    Empty,
}
