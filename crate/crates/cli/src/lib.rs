//! Command-line front end for the `treefrac` library.
//!
//! Every command produces a [`record::RunRecord`] whose `argv` replays the
//! run, with all defaults and configured caps spelled out.

pub mod acceptance;
pub mod args;
pub mod commands;
pub mod config;
pub mod record;

use thiserror::Error;
use treefrac::census::CensusError;
use treefrac::cfrac::CfError;
use treefrac::dimension::DimensionError;
use treefrac::orbit::OrbitError;
use treefrac::treegraph::GraphError;

pub use args::Cli;
pub use commands::{execute, Execution};
pub use config::Config;

pub mod exit {
    pub const OK: i32 = 0;
    pub const FAILURE: i32 = 1;
    pub const CERTIFICATION_FAILED: i32 = 2;
    pub const BUDGET_EXCEEDED: i32 = 3;
    pub const PARSE_ERROR: i32 = 4;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error(transparent)]
    Other(#[from] anyhow::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => exit::PARSE_ERROR,
            CliError::Budget(_) => exit::BUDGET_EXCEEDED,
            CliError::Other(_) => exit::FAILURE,
        }
    }

    fn other(e: impl std::fmt::Display) -> Self {
        CliError::Other(anyhow::anyhow!("{e}"))
    }
}

impl From<CfError> for CliError {
    fn from(e: CfError) -> Self {
        match e {
            CfError::Parse { .. } => CliError::Parse(e.to_string()),
            e => CliError::other(e),
        }
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::Parse { .. } => CliError::Parse(e.to_string()),
            e => CliError::other(e),
        }
    }
}

impl From<CensusError> for CliError {
    fn from(e: CensusError) -> Self {
        match e {
            CensusError::OutOfRange { .. } => CliError::Budget(e.to_string()),
            CensusError::Graph(g) => g.into(),
            e => CliError::other(e),
        }
    }
}

impl From<OrbitError> for CliError {
    fn from(e: OrbitError) -> Self {
        match e {
            OrbitError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            e => CliError::other(e),
        }
    }
}

/// Certification failures are not errors here: the command still emits a
/// record, with exit code 2. See [`commands::execute`].
impl From<DimensionError> for CliError {
    fn from(e: DimensionError) -> Self {
        match e {
            DimensionError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            e => CliError::other(e),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::other(e)
    }
}
