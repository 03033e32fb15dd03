use std::path::PathBuf;

use thiserror::Error;

use crate::profile::{OwnerId, Role, ValidationReport};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("owner id must not be empty")]
    EmptyOwner,

    #[error("invalid numeric range [{lower}, {upper}]: {reason}")]
    InvalidRange { lower: f64, upper: f64, reason: &'static str },

    #[error("interest level {0} out of [-1,1]")]
    LevelOutOfRange(f64),

    #[error("fuzzy level must be in (0,1), got {0}")]
    InvalidFuzzyLevel(f64),

    #[error("weight for {name:?} must be a positive finite number, got {value}")]
    InvalidWeight { name: String, value: f64 },

    #[error("fuzzy step needs a <= b, got a = {a}, b = {b}")]
    InvalidStepBounds { a: f64, b: f64 },

    #[error("empty search profile")]
    EmptySearchProfile,

    #[error("invalid {role} profile: {report}")]
    Invalid { role: Role, report: ValidationReport },

    #[error("stencil parse error at column {position}: {message}")]
    Stencil { position: usize, message: String },

    #[error("parse error at {path}: {message}")]
    Parse {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },

    #[error("duplicate profile for owner {owner} in role {role}")]
    DuplicateProfile { owner: OwnerId, role: Role },

    #[error("profile owner {found} does not match key owner {expected}")]
    OwnerMismatch { expected: OwnerId, found: OwnerId },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }

    /// Build a `Parse` error from a path-tracking serde failure.
    pub(crate) fn from_json(err: serde_path_to_error::Error<serde_json::Error>) -> Self {
        let path = err.path().to_string();
        let inner = err.into_inner();
        Error::Parse {
            path,
            line: inner.line(),
            column: inner.column(),
            message: inner.to_string(),
        }
    }
}
