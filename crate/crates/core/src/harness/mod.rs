//! Configuration-driven sweeps, tabular output and the self-test runner.

mod config;
mod selftest;
mod sweep;
mod table;

use thiserror::Error;

pub use config::{
    assign, lookup, EnergyUnit, Format, ModelKind, OutputSpec, RunConfig, SweepAxis, Threads,
    MAX_SWEEP_AXES,
};
pub use selftest::{selftest, InvariantResult, SelftestReport, DEFAULT_SEED};
pub use sweep::{run_sweep, Command};
pub use table::{emit_table, format_float, Cell, Provenance, ResultTable};

pub const THREADS_ENV: &str = "MAJLAB_THREADS";

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HarnessError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("I/O error: {0}")]
    Io(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl HarnessError {
    /// Process exit status for this failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Config(_) => 2,
            HarnessError::Io(_) | HarnessError::Internal(_) => 3,
        }
    }
}

/// Environment beats the command line, which beats the config file.
pub fn resolve_threads(
    env: Option<&str>,
    cli: Option<Threads>,
    config: Threads,
) -> Result<usize, HarnessError> {
    let chosen = match env.filter(|s| !s.trim().is_empty()) {
        Some(s) => Threads::parse(s)?,
        None => cli.unwrap_or(config),
    };
    Ok(chosen.resolve())
}
