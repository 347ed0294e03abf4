//! Engine error type.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EngineError {
    #[error("unsupported Cartan label: {0}")]
    UnsupportedLabel(String),
    #[error("unknown preset: {0}")]
    UnknownPreset(String),
    #[error("rank {0} too large for brute-force subsystem enumeration")]
    UnsupportedRank(usize),
    #[error("member set is not closed under negation")]
    NotSymmetric,
    #[error("Frobenius preset is incompatible with the diagram: {0}")]
    IncompatibleFrobenius(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("embedding counts are only computed for simply connected groups; the general formula is an upper bound")]
    NotSimplyConnected,
    #[error("invalid config: {0}")]
    InvalidConfig(String),
}
