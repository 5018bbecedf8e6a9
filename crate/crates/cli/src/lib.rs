//! Calculators, the measure solver and the verification suites behind the
//! `ample` binary.

pub mod calc;
pub mod measure;
pub mod models;
pub mod suites;

use thiserror::Error;

/// Default for `AMPLE_DEPTH_CEILING`.
pub const DEFAULT_DEPTH_CEILING: usize = 8;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] ample::Error),
}

impl CliError {
    /// Bad input of any kind is a usage error.
    pub fn exit_code(&self) -> u8 {
        2
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// What a command prints and how the process should exit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub json: serde_json::Value,
    pub success: bool,
}

impl Output {
    pub fn render(&self, json: bool) -> String {
        if json {
            serde_json::to_string_pretty(&self.json).expect("serialisable")
        } else {
            self.text.clone()
        }
    }

    pub fn exit_code(&self) -> u8 {
        if self.success {
            0
        } else {
            1
        }
    }
}

/// Reads `AMPLE_DEPTH_CEILING`, falling back to the default.
pub fn depth_ceiling() -> CliResult<usize> {
    match std::env::var("AMPLE_DEPTH_CEILING") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("AMPLE_DEPTH_CEILING must be a non-negative integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_DEPTH_CEILING),
    }
}

pub(crate) fn check_depth(depth: usize, ceiling: usize) -> CliResult<()> {
    if depth > ceiling {
        return Err(CliError::Usage(format!(
            "depth {depth} exceeds the ceiling {ceiling} (set AMPLE_DEPTH_CEILING to raise it)"
        )));
    }
    Ok(())
}
