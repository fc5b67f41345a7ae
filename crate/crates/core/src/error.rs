use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate interpolation node")]
    DuplicateNode,
    #[error("singular linear system (rank {rank})")]
    SingularSystem { rank: usize },
    #[error("polynomial division by zero")]
    DivisionByZeroPoly,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("unsupported evaluation point: {0}")]
    UnsupportedPoint(String),
    #[error("{what} has a pole at x = {x}")]
    PoleAtGridPoint { what: &'static str, x: i64 },
    #[error("{what} has a pole at n = {n}")]
    PoleInCoefficient { what: &'static str, n: i64 },
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("degenerate interpolation grid: {0}")]
    DegenerateGrid(String),
    #[error("genericity assumption violated: {0}")]
    AssumptionViolated(String),
    #[error("denominator polynomial vanishes at x = {x}")]
    SingularDeformation { x: i64 },
    #[error("verification of {check} failed at {witness}")]
    VerificationFailure { check: String, witness: String },
    #[error("recurrence cannot advance past n = {n}: leading coefficient vanishes")]
    CannotAdvance { n: usize },
    #[error("primitive map undefined: g'(0)_{k} vanishes")]
    MapUndefined { k: usize },
    #[error("not a constant-coefficient recurrence: {0}")]
    TheoremViolation(String),
    #[error("basis element P_(D,{m}) unavailable")]
    InsufficientBasis { m: i64 },
    #[error("conjecture counterexample: {0}")]
    ConjectureCounterexample(String),
    #[error("degenerate spectrum: {0}")]
    DegenerateSpectrum(String),
    #[error("irrational half-power: {0}")]
    IrrationalShift(String),
    #[error("only type-I index sets are supported")]
    UnsupportedIndexType,
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable identifier.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DuplicateNode => "DuplicateNode",
            Error::SingularSystem { .. } => "SingularSystem",
            Error::DivisionByZeroPoly => "DivisionByZeroPoly",
            Error::InvalidInput(_) => "InvalidInput",
            Error::InvalidParameters(_) => "InvalidParameters",
            Error::UnsupportedPoint(_) => "UnsupportedPoint",
            Error::PoleAtGridPoint { .. } => "PoleAtGridPoint",
            Error::PoleInCoefficient { .. } => "PoleInCoefficient",
            Error::InvariantViolation(_) => "InvariantViolation",
            Error::DegenerateGrid(_) => "DegenerateGrid",
            Error::AssumptionViolated(_) => "AssumptionViolated",
            Error::SingularDeformation { .. } => "SingularDeformation",
            Error::VerificationFailure { .. } => "VerificationFailure",
            Error::CannotAdvance { .. } => "CannotAdvance",
            Error::MapUndefined { .. } => "MapUndefined",
            Error::TheoremViolation(_) => "TheoremViolation",
            Error::InsufficientBasis { .. } => "InsufficientBasis",
            Error::ConjectureCounterexample(_) => "ConjectureCounterexample",
            Error::DegenerateSpectrum(_) => "DegenerateSpectrum",
            Error::IrrationalShift(_) => "IrrationalShift",
            Error::UnsupportedIndexType => "UnsupportedIndexType",
            Error::Parse(_) => "Parse",
        }
    }

    pub(crate) fn failure(check: impl Into<String>, witness: impl Into<String>) -> Self {
        Error::VerificationFailure { check: check.into(), witness: witness.into() }
    }
}
