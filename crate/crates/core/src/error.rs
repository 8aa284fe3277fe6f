//! Error taxonomy shared by every computation in the crate.

use alloc::string::String;
use core::fmt;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;

/// Everything that can go wrong while validating inputs or running a
/// computation to completion.
#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// A matrix expected to be Hermitian was not. `defect` is the relative
    /// Frobenius norm of `A - A*`.
    NotHermitian { defect: f64 },
    /// The eigensolver exhausted its sweep budget. `residual` is the
    /// off-diagonal Frobenius mass it was left with.
    NoConvergence { sweeps: usize, residual: f64 },
    /// Operand shapes do not conform; the message names the offenders.
    ShapeMismatch { context: String },
    /// Two elements that must live over the same operator space do not.
    SpaceMismatch { context: String },
    /// A scalar argument lies outside its documented domain.
    DomainError { context: String },
    /// An input is too degenerate for the computation to use (dependent
    /// basis vectors, non-finite entries, empty data).
    DegenerateInput { context: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotHermitian { defect } => {
                write!(f, "matrix is not Hermitian: relative defect {defect:.3e}")
            }
            Error::NoConvergence { sweeps, residual } => write!(
                f,
                "eigensolver did not converge after {sweeps} sweeps (residual {residual:.3e})"
            ),
            Error::ShapeMismatch { context } => write!(f, "shape mismatch: {context}"),
            Error::SpaceMismatch { context } => write!(f, "space mismatch: {context}"),
            Error::DomainError { context } => write!(f, "domain error: {context}"),
            Error::DegenerateInput { context } => write!(f, "degenerate input: {context}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
