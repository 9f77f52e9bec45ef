//! Library half of the `casimir` command-line tool: argument parsing,
//! sweeps, CSV/SVG emission and figure reproduction.

pub mod app;
pub mod args;
pub mod error;
pub mod reproduce;
pub mod svg;
pub mod sweep;

pub use error::{CliError, Result};
