//! Library surface of the command-line front end: configuration parsing,
//! dataset ingestion, output writers, and the subcommand implementations
//! that the `fairsub` binary dispatches to.

pub mod commands;
pub mod config;
pub mod error;
pub mod ingest;
pub mod output;

pub use config::{Config, DatasetFormat, ObjectiveFamily};
pub use error::{CliError, CliResult};
pub use ingest::{build_oracle, ingest, DatasetBundle, Payload};
