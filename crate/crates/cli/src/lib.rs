//! Command-line front end for `affine-paths`: argument parsing, JSON and
//! text reports, and the on-disk R-matrix table cache.

pub mod args;
pub mod cache;
pub mod report;
pub mod run;

pub use crate::args::Cli;
pub use crate::run::{exit_code_for, run, JobConfig, Outcome};
