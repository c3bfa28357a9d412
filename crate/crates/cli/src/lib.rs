//! Command-line front end for `moshinsky2d`: single-point evaluation,
//! parameter sweeps, figure data and oracle verification, emitted as CSV,
//! JSON or aligned text.

pub mod cli;
pub mod config;
pub mod error;
pub mod figure;
pub mod grid;
pub mod output;
pub mod sweep;

pub use cli::run;
pub use error::{CliError, CliResult};
