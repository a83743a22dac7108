//! Command-line front end for `fieldscope`: reads matrix documents, runs one
//! analysis per invocation and writes JSON, CSV or SVG.

pub mod commands;
pub mod config;
pub mod docs;
pub mod error;
pub mod render;

pub use commands::{configure_threads, execute, run_on};
pub use config::{Cli, Command, Format, RunConfig};
pub use error::CliError;
