use std::path::PathBuf;

/// Error type shared by every module in the crate.
///
/// Rule violations found by [`crate::types::validate_team`] are *data*, not
/// errors, and are reported separately as [`crate::types::Violation`] values.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A record in an input file could not be decoded.
    #[error("parse error at {locator}: {message}")]
    Parse { locator: String, message: String },

    /// Decoded data breaks a dataset invariant (unknown player, duplicate id,
    /// impossible stat line, non-increasing match order, ...).
    #[error("dataset integrity: {0}")]
    DataIntegrity(String),

    /// An argument to a numeric routine is outside its domain.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// A configuration value is inconsistent or unusable.
    #[error("invalid configuration: {0}")]
    Config(String),

    /// No team satisfying the active constraints exists in the pool.
    #[error("infeasible selection: {0}")]
    Infeasible(String),

    /// A payoff structure was queried outside its rank coverage, or is
    /// malformed.
    #[error("payoff structure: {0}")]
    Structure(String),

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

    pub(crate) fn parse(locator: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse { locator: locator.into(), message: message.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
