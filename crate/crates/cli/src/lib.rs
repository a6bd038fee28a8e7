//! Command-line workbench for union-intersecting families: construction
//! output, bound evaluation, verification suites and searches.

pub mod app;
pub mod report;
pub mod suites;

pub use app::{execute, run, Cli, ExitCode, Outcome};
