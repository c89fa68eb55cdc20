//! File formats, configuration and the `logcut` experiment commands built on
//! `logcut_core`.

pub mod cli;
pub mod commands;
pub mod config;
pub mod error;
pub mod formats;
pub mod record;

pub use error::{CliError, Result};
