//! Command-line front end for the `power-lindley` crate.

pub mod args;
pub mod commands;
pub mod error;
pub mod table;

pub use args::Cli;
pub use commands::run;
pub use error::{exit, CliError};
