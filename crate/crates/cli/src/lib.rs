//! Command implementations behind the `opgns` binary.
//!
//! Every command returns an [`Outcome`] holding the text for stdout and the
//! exit code, so the commands can be driven without spawning a process.
//! Exit codes: 0 success, 1 usage or parse error, 2 a checked identity failed.

use std::fmt;

pub mod commands;
pub mod files;

pub use commands::{cmd_analyze, cmd_dimcheck, cmd_infocomplete, cmd_random, AnalyzeOptions, Report};
pub use files::{PoolFile, StateFile, MAX_DIM, SCHEMA_VERSION};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CliError {
    Usage(String),
    Parse(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        1
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}
