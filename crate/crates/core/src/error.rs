use std::path::PathBuf;

use thiserror::Error;

use crate::fleet::MaintenanceLevel;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: parse error at line {line}, column {column}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// A named domain invariant does not hold for the supplied data.
    #[error("invalid {invariant}: {message}")]
    Invalid {
        invariant: &'static str,
        message: String,
    },

    #[error(
        "train-set {train_set}: {level} window [{low_km}, {high_km}] km contains no dispatch day \
         (start mileage {start_mileage} km, daily {daily_mileage} km)"
    )]
    EmptyWindow {
        train_set: String,
        level: MaintenanceLevel,
        low_km: i64,
        high_km: i64,
        start_mileage: i64,
        daily_mileage: i64,
    },

    #[error("train-set {train_set} is unschedulable: {detail}")]
    Unschedulable { train_set: String, detail: String },

    #[error("oracle budget exceeded: {required} combinations needed, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u64 },
}

impl Error {
    pub(crate) fn invalid(invariant: &'static str, message: impl Into<String>) -> Self {
        Error::Invalid {
            invariant,
            message: message.into(),
        }
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::Io { .. } | Error::Invalid { .. } => 2,
            Error::EmptyWindow { .. } | Error::Unschedulable { .. } => 3,
            Error::BudgetExceeded { .. } => 4,
        }
    }

    /// Short machine-readable tag for the error class.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse",
            Error::Io { .. } => "io",
            Error::Invalid { .. } => "semantic",
            Error::EmptyWindow { .. } => "empty_window",
            Error::Unschedulable { .. } => "unschedulable",
            Error::BudgetExceeded { .. } => "budget_exceeded",
        }
    }
}
