use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("fixture file missing: {0}")]
    MissingFixture(PathBuf),
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("expected a surface over {expected}, found {found}")]
    FieldMismatch { expected: &'static str, found: &'static str },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] collinear_core::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}
