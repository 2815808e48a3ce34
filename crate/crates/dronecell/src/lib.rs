//! Simulation driver, file formats and command-line plumbing on top of
//! `dronecell-core`.

pub mod commands;
pub mod config;
pub mod engine;
pub mod error;
pub mod output;

pub use config::{Overrides, RunConfig};
pub use error::{Error, Result};
