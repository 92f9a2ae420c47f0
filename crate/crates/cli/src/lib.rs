//! Library side of the `ndt` command-line tool.

pub mod commands;
pub mod document;
pub mod format;

pub use commands::{run, Cli, Command, GenCommand, KindArg, Output};
pub use document::{ResultDocument, Status};
