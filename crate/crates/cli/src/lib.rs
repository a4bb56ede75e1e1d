//! Command-line front end for `cubelval-core`: single-curve analysis, table
//! reproduction, range scans, averaged L-values, descent reports and the
//! acceptance suite.

pub mod cache;
pub mod commands;
pub mod config;
pub mod error;
pub mod fixtures;
pub mod json;
pub mod verify;

pub use commands::Output;
pub use config::RunConfig;
pub use error::CliError;
