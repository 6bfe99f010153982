use thiserror::Error;

/// Build-time and configuration errors. Evaluation failures are reported
/// as [`crate::partialfn::Outcome`] values instead.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("coding window exceeded: {bits}-bit natural")]
    CodingOverflow { bits: u64 },
    #[error("invalid coding scheme: {0}")]
    InvalidScheme(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unbound variable `{0}`")]
    Unbound(String),
    #[error("not a term code")]
    NotACode,
    #[error("oracle file line {line}: {msg}")]
    OracleFile { line: usize, msg: String },
    #[error("unknown name `{0}`")]
    UnknownName(String),
}
