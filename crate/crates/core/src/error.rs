use thiserror::Error;

use crate::ring::Element;

/// Errors raised by ring construction and by the ideal, list and search algorithms.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is too small, residue rings need n >= 2")]
    ModulusTooSmall(u64),
    #[error("quotient modulus must be monic")]
    NonMonicModulus,
    #[error("quotient modulus must have degree at least 1")]
    DegreeZeroModulus,
    #[error("ring cardinality exceeds the supported maximum of {max}")]
    RingTooLarge { max: usize },
    #[error("operands belong to different rings")]
    MixedRingOperands,
    #[error("value does not match the shape of the ring")]
    ShapeMismatch,
    #[error("list entry at position {position} is zero")]
    ZeroEntry { position: usize },
    #[error("list is not non-decreasing: ann at position {later} is contained in ann at position {earlier}")]
    NotNonDecreasing { earlier: usize, later: usize },
    #[error("list is already independent")]
    AlreadyIndependent,
    #[error("failure report at position {position} does not hold for this list")]
    InvalidFailureReport { position: usize },
    #[error("invalid independence certificate")]
    InvalidCertificate,
    #[error("no enlargement of any annihilator exists for a dependent list")]
    NoRepairFound,
    #[error("fuel exhausted after {0} steps")]
    FuelExhausted(usize),
    #[error("ideal is not regular; witness x={witness}")]
    IdealNotRegular { witness: Element },
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}

impl Error {
    /// True for errors that indicate a defect in the engine rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::NoRepairFound | Error::FuelExhausted(_) | Error::InvariantViolation(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
