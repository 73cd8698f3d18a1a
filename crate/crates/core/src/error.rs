use thiserror::Error;

/// Errors produced anywhere in the workbench.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("pole of order {order} at q = 1 in the coefficient of {monomial}")]
    PoleAtOne { monomial: String, order: u32 },

    #[error("element is not invertible: {0}")]
    NotInvertible(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("outer derivation is inconsistent with xy = q yx: {0}")]
    InconsistentDerivation(String),

    #[error("frame does not exist: {0}")]
    FrameDoesNotExist(String),

    #[error("C tensor does not square to the identity")]
    CNotInvolution,

    #[error("incompatible (lambda, C) pair: {0}")]
    IncompatibleLambda(String),

    #[error("structure data unavailable for outer calculi")]
    OuterStructureUnavailable,

    #[error("form degree {0} exceeds the supported maximum of 3")]
    DegreeTooHigh(usize),

    #[error("degree mismatch: cannot combine degree {0} with degree {1}")]
    DegreeMismatch(usize, usize),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("unknown symbol '{symbol}' at position {pos}")]
    UnknownSymbol { pos: usize, symbol: String },

    #[error("unknown preset '{0}'")]
    UnknownPreset(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("degenerate frame: {0}")]
    DegenerateFrame(String),
}

pub type Result<T> = std::result::Result<T, Error>;
