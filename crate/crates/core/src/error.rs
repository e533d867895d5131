use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{line}:{col}: undeclared symbol `{symbol}`")]
    UndeclaredSymbol { line: usize, col: usize, symbol: String },
    #[error("{line}:{col}: syntax error: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("{line}:{col}: module position {pos} out of range 1..={rank}")]
    PositionOutOfRange { line: usize, col: usize, pos: u32, rank: u32 },
    #[error("bezout/gcd of an all-zero input")]
    ZeroInput,
    #[error("saturation insufficient: term of degree {degree} exceeds saturation bound {bound}")]
    SaturationInsufficient { degree: usize, bound: usize },
    #[error("presentation is not saturated")]
    NotSaturated,
    #[error("product of two positioned module elements")]
    BothPositioned,
    #[error("term rank mismatch")]
    RankMismatch,
    #[error("zero polynomial has no leading monomial")]
    ZeroPolynomial,
    #[error("order is not sequential on graded words below {0}")]
    NonSequentialOrder(String),
    #[error("leading coefficient of `{0}` is not a scalar")]
    NonScalarLeadingCoefficient(String),
    #[error("syzygy liftings require a complete result")]
    IncompleteResult,
    #[error("term stream is not strictly increasing at step {0}")]
    NonMonotoneStream(usize),
    #[error("bound does not contain the leading term of the query")]
    BoundTooSmall,
    #[error("syzygy legs do not compose to the same term")]
    LegMismatch,
    #[error("invalid presentation: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
