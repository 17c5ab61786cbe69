//! File formats, report serialization and the command-line runner for
//! `simulzero`.

pub mod bench;
pub mod cli;
pub mod error;
pub mod format;
pub mod order;
pub mod report;

pub use error::CliError;
