use thiserror::Error;

/// Errors surfaced by the engine. Structural misuse (table mismatches,
/// malformed input files) is an error; a mathematical check that fails is
/// *not* — those come back as PASS/FAIL values with witnesses.
#[derive(Debug, Error)]
pub enum Error {
    #[error("polynomials belong to different variable tables")]
    TableMismatch,
    #[error("invalid variable table: {0}")]
    InvalidTable(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("series inversion needs constant term 1")]
    NonUnitConstant,
    #[error("invalid input: {0}")]
    Input(String),
    #[error("characteristic pair rejected: {0}")]
    PairRejected(String),
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
