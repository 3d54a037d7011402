use thiserror::Error;

/// Every failure the library reports. Mathematical verdicts (a ping-pong
/// condition that does not hold) are *not* errors; they live in certificates.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not square-free")]
    NotSquareFree(u64),
    #[error("d must be at least {min}, got {got}")]
    DTooSmall { min: u64, got: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields: sqrt({0}) vs sqrt({1})")]
    FieldMismatch(u64, u64),
    #[error("element is not a unit (norm {0})")]
    NonUnit(String),
    #[error("the fundamental unit has norm -1, no Pell 4-unit exists")]
    NormMinusOne,
    #[error("coefficient {0} does not lie in the ring of integers")]
    NonIntegral(String),
    #[error("basis slots must be pairwise distinct")]
    SlotsNotDistinct,
    #[error("matrix mixes real and imaginary entries")]
    NotRealProjective,
    #[error("degenerate arc: {0}")]
    DegenerateArc(&'static str),
    #[error("arity mismatch: {maps} maps but {slots} table slots")]
    ArityMismatch { maps: usize, slots: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("cannot parse {0:?}")]
    Parse(String),
}

impl Error {
    /// Stable variant name, used by the CLI when reporting constructor errors.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NotSquareFree(_) => "NotSquareFree",
            Error::DTooSmall { .. } => "DTooSmall",
            Error::DivisionByZero => "DivisionByZero",
            Error::FieldMismatch(..) => "FieldMismatch",
            Error::NonUnit(_) => "NonUnit",
            Error::NormMinusOne => "NormMinusOne",
            Error::NonIntegral(_) => "NonIntegral",
            Error::SlotsNotDistinct => "SlotsNotDistinct",
            Error::NotRealProjective => "NotRealProjective",
            Error::DegenerateArc(_) => "DegenerateArc",
            Error::ArityMismatch { .. } => "ArityMismatch",
            Error::InvalidInput(_) => "InvalidInput",
            Error::Parse(_) => "Parse",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
