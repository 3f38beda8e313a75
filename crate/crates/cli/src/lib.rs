//! Spec files, reports and certificate checking for the `orbitcat` tool.

pub mod build;
pub mod certs;
pub mod commands;
pub mod encode;
pub mod parse;
pub mod report;
pub mod spec;
pub mod verify;

pub use parse::{parse_spec, ParseError};
pub use spec::{serialize, SpecFile};
pub use build::{CliError, CliResult};
pub use commands::{run, Command};
pub use report::{Flags, Report, Status};
pub use verify::verify;
