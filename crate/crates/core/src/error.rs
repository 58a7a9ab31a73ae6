use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("group of order {order} exceeds the enumeration bound {bound}")]
    EnumerationBound { order: u128, bound: u64 },

    #[error("group mismatch: expected {expected}, found {found}")]
    GroupMismatch { expected: String, found: String },

    #[error("shape mismatch: expected {expected} coordinates, found {found}")]
    ShapeMismatch { expected: usize, found: usize },

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("function is not positive definite: recovered mass {mass:e} at element {coords:?}")]
    NotPositiveDefinite { coords: Vec<u64>, mass: f64 },

    #[error("inverse transform is not real: imaginary mass {imag:e} at element {coords:?}")]
    NonHermitian { coords: Vec<u64>, imag: f64 },

    #[error("characteristic function of distribution {index} vanishes at character {coords:?}")]
    VanishingCharacteristicFunction { index: usize, coords: Vec<u64> },

    #[error("invalid linear forms: {0}")]
    InvalidLinearForms(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),
}
