//! Front end for `evt-core`: argument parsing, CSV/JSON output and the
//! subcommands of the `evt` binary.

#![deny(missing_docs)]

pub mod commands;
pub mod dist;
mod error;
pub mod number;
pub mod published;
pub mod record;

pub use error::{CliError, Result};
