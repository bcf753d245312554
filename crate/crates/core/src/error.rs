use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero input")]
    ZeroInput,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("field mismatch")]
    FieldMismatch,
    #[error("curve degenerates / D=0")]
    Degenerate,
    #[error("absolute invariants do not determine the point")]
    NotDetermined,
    #[error("index obstruction at {0}")]
    IndexObstruction(u64),
    #[error("degenerate point: {0}")]
    DegeneratePoint(String),
    #[error("precision infeasible: {0}")]
    PrecisionInfeasible(String),
    #[error("insufficient precision or wrong denominator bound: {0}")]
    Reconstruction(String),
    #[error("internal consistency: {0}")]
    Internal(String),
    #[error("fixture: {0}")]
    Fixture(String),
}

pub type Result<T> = std::result::Result<T, Error>;
