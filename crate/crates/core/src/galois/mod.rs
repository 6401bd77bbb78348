//! Finite-field arithmetic and dense linear algebra for the codec and the
//! network-coding repair engine.
//!
//! Prime fields GF(p) are the default (GF(257) for the codec); binary
//! extension fields GF(2^m) are supported through an explicit reduction
//! polynomial. Values are always kept in canonical reduced form.

mod field;
mod matrix;

use thiserror::Error;

pub use field::{FieldElement, FieldSpec};
pub use matrix::{mat_mul, mat_rank, solve_linear, FieldMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GaloisError {
    #[error("division by zero in a finite field")]
    DivisionByZero,
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u32),
    #[error("unsupported extension degree {0}")]
    BadDegree(u32),
    #[error("polynomial {poly:#b} is not monic irreducible of degree {degree}")]
    Reducible { degree: u32, poly: u64 },
    #[error("value {value} is not canonical in a field of order {order}")]
    NotCanonical { value: u32, order: u64 },
    #[error("matrix dimensions {left:?} and {right:?} do not agree")]
    DimensionMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("matrix is {0}x{1}, expected square")]
    NotSquare(usize, usize),
    #[error("matrix is singular")]
    Singular,
    #[error("rows have different lengths")]
    Ragged,
}
