//! Command-line front end for `llbdf2-core`: config files, run manifests,
//! CSV tables and binary field snapshots.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod error;
pub mod manifest;
pub mod output;

pub use commands::{cmd_compare, cmd_converge, cmd_lemmas, cmd_run, CompareParams, ConvergeParams, LemmaParams};
pub use config::{resolve, RunConfig};
pub use error::{CliError, Result};
pub use manifest::Manifest;
