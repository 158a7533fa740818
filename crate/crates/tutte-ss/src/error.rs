//! Error type shared across the crate.

use alloc::string::String;

/// Failures surfaced by exact computations.
///
/// Everything here indicates either a violated mathematical invariant
/// (a division that the theory says must be exact failed), an input
/// outside a routine's supported range, or a resource cap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// An exact division left a nonzero remainder. Carries the divisor
    /// description and the stage at which the remainder appeared.
    NotDivisible { divisor: &'static str, stage: u32 },
    /// A Laurent normalization failed: the value is not a Laurent
    /// polynomial in the expected variable.
    NotLaurent,
    /// Requested level outside the supported range.
    LevelOutOfRange { level: u64, min: u64, max: u64 },
    /// A vertex word contains a letter outside {0, 1, 2} or an unknown
    /// generator name was given.
    InvalidAlphabet(String),
    /// A symbolic computation exceeded the configured term cap.
    ResourceCap { cap: usize, needed: usize },
    /// An oracle input has more edges than the exponential-time routines
    /// accept.
    TooManyEdges { limit: usize, got: usize },
    /// An oracle input must be connected and is not.
    DisconnectedInput,
    /// A counting oracle's state space exceeds its hard bound.
    TooLarge { detail: &'static str },
    /// Evaluation input outside a formula's domain (for example a pole
    /// of the recursion's rational coefficients, or t ≤ 1 where a
    /// positive hyperbolic argument is required).
    DomainError { detail: &'static str },
    /// Input parameter outside the supported range.
    InvalidParameter(String),
}

impl core::fmt::Display for Error {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Error::NotDivisible { divisor, stage } => {
                write!(f, "exact division by {divisor} failed at stage {stage}")
            }
            Error::NotLaurent => write!(f, "value is not a Laurent polynomial"),
            Error::LevelOutOfRange { level, min, max } => {
                write!(f, "level {level} out of range [{min}, {max}]")
            }
            Error::InvalidAlphabet(msg) => write!(f, "invalid alphabet: {msg}"),
            Error::ResourceCap { cap, needed } => {
                write!(f, "term cap exceeded: needed {needed} terms, cap is {cap}")
            }
            Error::TooManyEdges { limit, got } => {
                write!(f, "oracle input too large: {got} edges, limit is {limit}")
            }
            Error::DisconnectedInput => write!(f, "input graph is not connected"),
            Error::TooLarge { detail } => write!(f, "oracle state space too large: {detail}"),
            Error::DomainError { detail } => write!(f, "input outside domain: {detail}"),
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;
