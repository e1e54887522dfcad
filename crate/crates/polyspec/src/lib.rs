//! Dense complex linear algebra, block companion linearizations of matrix
//! polynomials, diagonalizability tests for unitary / doubly stochastic
//! coefficient classes, and Hoffman-Wielandt type inequality verification
//! with optimal eigenvalue matching.

pub mod campaign;
pub mod companion;
pub mod doc;
pub mod gen;
pub mod hoffman;
pub mod matpoly;
pub mod numkit;

pub use numkit::{Cplx, Mat, Tolerances};

/// Errors shared across the library.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("matrix is numerically singular")]
    SingularMatrix,
    #[error("eigensolver failed to converge within the iteration cap")]
    NoConvergence,
    #[error("matrix is not Hermitian within tolerance")]
    NotHermitian,
    #[error("matrices do not commute within tolerance")]
    NotCommuting,
    #[error("matrix is not normal within tolerance")]
    NotNormal,
    #[error("coefficient is not unitary within tolerance")]
    NotUnitary,
    #[error("leading coefficient is not the identity")]
    NotMonic,
    #[error("eigenvector input is the zero vector")]
    ZeroVector,
    #[error("input sequences have different lengths")]
    LengthMismatch,
    #[error("instance too large for exhaustive enumeration")]
    TooLarge,
    #[error("matrix is not diagonalizable and no diagonalizer was supplied")]
    NotDiagonalizable,
    #[error("matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("degenerate parameters: vanishing radicand or denominator")]
    DegenerateParameters,
    #[error("scalar quadratic produced a repeated root; numerical breakdown")]
    DegenerateRoots,
    #[error("leading coefficient is numerically singular")]
    SingularLeading,
    #[error("invalid input: {0}")]
    InvalidSpec(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("nonfinite entry in input")]
    NonFinite,
}

pub type Result<T> = std::result::Result<T, Error>;
