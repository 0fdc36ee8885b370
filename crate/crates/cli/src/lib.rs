//! Experiment driver for the `meqsim` simulator: protocol runs in every
//! execution mode with JSON-lines reports, a self-test of all invariant
//! suites, and communication cost tables.

pub mod config;
pub mod cost;
pub mod error;
pub mod instances;
pub mod problems;
pub mod report;
pub mod run;
pub mod selftest;

pub use config::{ExperimentConfig, InputSource, Mode, Problem, RunArgs};
pub use error::{CliError, Result};
pub use run::{cmd_run, write_report};
