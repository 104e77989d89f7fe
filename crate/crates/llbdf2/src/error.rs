use std::path::PathBuf;

use thiserror::Error;

/// Everything a subcommand can fail with.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}:{line}: expected `key = value`, got `{text}`")]
    Syntax { path: String, line: usize, text: String },

    #[error("unknown key `{0}`")]
    UnknownKey(String),

    #[error("key `{0}` given twice in the same source")]
    DuplicateKey(String),

    #[error("invalid value `{value}` for `{key}`: {reason}")]
    BadValue { key: String, value: String, reason: String },

    #[error("`{key}` must be positive (got {value})")]
    NonPositive { key: String, value: f64 },

    #[error("`T` / `dt` leaves {steps} whole step(s); at least 2 are required")]
    TooFewSteps { steps: usize },

    #[error("{0}")]
    Invalid(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: not a snapshot file ({reason})")]
    Snapshot { path: PathBuf, reason: String },

    #[error("numerical failure: {0}")]
    Numerical(llbdf2_core::Error),

    #[error("acceptance check failed: {0}")]
    Acceptance(String),
}

impl CliError {
    /// Process exit status: 1 for input problems, 2 for numerical or
    /// acceptance failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Numerical(_) | CliError::Acceptance(_) => 2,
            _ => 1,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

impl From<llbdf2_core::Error> for CliError {
    fn from(e: llbdf2_core::Error) -> Self {
        use llbdf2_core::Error as E;
        match e {
            E::NonPositive { name, value } => CliError::NonPositive {
                key: name.to_string(),
                value,
            },
            E::TooFewSteps { steps } => CliError::TooFewSteps { steps },
            E::InvalidDimension(d) => CliError::BadValue {
                key: "dim".into(),
                value: d.to_string(),
                reason: "must be 1, 2 or 3".into(),
            },
            E::CellCountMismatch { dim, given } => CliError::BadValue {
                key: "cells".into(),
                value: format!("{given} entries"),
                reason: format!("expected 1 or {dim}"),
            },
            E::TooFewCells { axis, cells } => CliError::BadValue {
                key: "cells".into(),
                value: cells.to_string(),
                reason: format!("axis {axis} needs at least 2 cells"),
            },
            E::InvalidStudy(msg) => CliError::Invalid(msg.to_string()),
            other => CliError::Numerical(other),
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
