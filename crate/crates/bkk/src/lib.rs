//! Command-line front end: configuration, check suites, calibration and
//! deterministic JSON reports over `bkk-core`.

pub mod calibrate;
pub mod cli;
pub mod config;
pub mod error;
pub mod gamma;
pub mod mellin;
pub mod report;
pub mod verify;

pub use cli::{execute, run_from, Cli, CliFailure, Outcome};
pub use config::{Mode, RunConfig, Tolerances, CANONICAL_CONVENTION};
pub use error::UsageError;
pub use report::{Check, Report, Status};
