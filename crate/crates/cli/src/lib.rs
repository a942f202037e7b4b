//! Library half of the `concordance-lab` command-line tool: argument
//! grammar, the polynomial text parser, and run-report rendering. The
//! binary is a thin wrapper around [`run`].

#![forbid(unsafe_code)]

mod app;
pub mod poly;
pub mod report;

pub use app::{run, CliError};
