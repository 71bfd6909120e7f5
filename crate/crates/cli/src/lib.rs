//! `trigauge` command-line driver.
//!
//! Exit codes: 0 success, 1 I/O or other runtime failure, 2 invalid input
//! (unparseable edge list, bad generator spec, bad flags or config),
//! 3 brute-force oracle over its vertex limit, 4 kernels disagree,
//! 5 degenerate model fit.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;

pub use args::Cli;
pub use commands::run;
pub use error::CliError;
