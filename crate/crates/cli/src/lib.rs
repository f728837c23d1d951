//! Experiment runner behind the `laee` binary: configuration, replicated
//! experiments over shared deployments, and CSV/JSON output.

pub mod commands;
pub mod config;
pub mod error;
pub mod experiments;
pub mod output;

pub use commands::Report;
pub use config::ExperimentConfig;
pub use error::CliError;
