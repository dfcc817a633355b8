//! Command-line front end for the `qgame` library.
//!
//! [`config::parse_config`] turns flags and an optional JSON config file into a
//! validated [`RunConfig`], [`runner::run`] executes it, and the resulting
//! [`Report`] serializes to JSON.

pub mod config;
pub mod error;
pub mod report;
pub mod runner;

pub use config::{parse_config, Model, Params, RunConfig};
pub use error::CliError;
pub use report::{Report, Results, Sample};
pub use runner::run;
