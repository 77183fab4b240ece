use monodromy_core::Error as CoreError;
use thiserror::Error;

use crate::poly::ParseError;

/// Process exit statuses.
pub mod exit {
    pub const SUCCESS: u8 = 0;
    /// Non-convenient input, refuted non-degeneracy, or a failed invariant.
    pub const HYPOTHESIS: u8 = 1;
    /// Malformed polynomial, JSON or command line.
    pub const PARSE: u8 = 2;
    /// A result that `--strict` or `--strict-nondegenerate` requires is not determined.
    pub const INDETERMINATE: u8 = 3;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("hypothesis failure: {0}")]
    Hypothesis(String),
    #[error("indeterminate: {0}")]
    Indeterminate(String),
    #[error(transparent)]
    Core(#[from] CoreError),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) | CliError::Input(_) | CliError::Io { .. } => exit::PARSE,
            CliError::Hypothesis(_) => exit::HYPOTHESIS,
            CliError::Indeterminate(_) => exit::INDETERMINATE,
            CliError::Core(e) => match e {
                CoreError::InvalidSupport(_) | CoreError::DimensionMismatch { .. } => exit::PARSE,
                CoreError::Indeterminate(_) | CoreError::NotApplicable(_) => exit::INDETERMINATE,
                _ => exit::HYPOTHESIS,
            },
        }
    }
}
