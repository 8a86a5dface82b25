//! Exact arithmetic over the Gaussian rationals Q(i) and the small amount of
//! linear algebra the rest of the crate needs.

mod gaussian;
mod matrix;
mod rational;

pub use gaussian::{gq_arith, ArithOp, GaussianRational};
pub use matrix::{matrix_rank, solve_linear_2, ExactMatrix, LinearSolution};
pub use rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("{len} entries do not fit a {rows}x{cols} matrix")]
    Shape { rows: usize, cols: usize, len: usize },
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("line equation has a = b = 0")]
    ZeroCoefficients,
}
