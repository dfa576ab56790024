use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("spectrum entry e{index} would become negative")]
    NegativeMultiplicity { index: u32 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("requested cell lies outside the computed truncation: {0}")]
    TruncationExceeded(String),

    /// A scaled coefficient that should be a count is not a non-negative
    /// integer. Always signals an implementation bug.
    #[error("integrality violation at {key}: scaled coefficient {value}")]
    IntegralityViolation { key: String, value: String },

    #[error("unsupported coefficient ring: {0}")]
    UnsupportedRing(String),

    #[error("states come from incompatible models: {0}")]
    MismatchedModels(String),

    #[error("diagram is not connected")]
    DisconnectedDiagram,

    #[error("first moment is not invertible")]
    NonInvertibleFirstMoment,

    #[error("leading weight s_1 must be non-zero")]
    ZeroLeadingWeight,

    #[error("series operation failed: {0}")]
    Series(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
