//! Command-line front end: configuration, commands and the oracle validation lattice.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod error;
pub mod validate;

pub use config::{Command, Format, OracleLevel, RunConfig, StateFlags};
pub use error::{CliError, Result};
