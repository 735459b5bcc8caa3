//! Error taxonomy shared by the library and the CLI.

use thiserror::Error;

/// Why an element fails Lie-subalgebra membership.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum NotLieReason {
    /// The scalar component `p0` is nonzero.
    #[error("nonzero scalar component")]
    ScalarComponent,
    /// The x/y coefficients are not in the span: the membership divisions
    /// by `v^2 - t*u` leave a remainder.
    #[error("coefficients not divisible by v^2 - t*u")]
    Divisibility,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input or violated precondition.
    #[error("{0}")]
    Usage(String),
    /// An exact division left a remainder (up to the stated order for
    /// truncated series).
    #[error("not divisible")]
    NotDivisible,
    /// The element is not in the Lie subalgebra.
    #[error("not a Lie element: {0}")]
    NotLie(NotLieReason),
    /// Redundant matrix entries contradict each other during logarithm
    /// recovery.
    #[error("inconsistent matrix: {0}")]
    Consistency(String),
}

impl Error {
    pub fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub fn consistency(msg: impl Into<String>) -> Self {
        Error::Consistency(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
