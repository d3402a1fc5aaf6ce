//! Command-line front end for `galilean-fw`: frame tables, transport trajectories and the
//! identity check suite, driven by TOML job specs.

pub mod commands;
pub mod error;
pub mod run;
pub mod spec;
pub mod table;

pub use commands::{run_check, run_frame, run_transport, TransportSummary};
pub use error::{CliError, Result};
pub use run::{execute, Command, Format, Output};
pub use spec::{emit_spec, parse_spec, read_spec, JobSpec};
pub use table::{Cell, Table};

/// Version of the JSON documents written by every command.
pub const SCHEMA_VERSION: u32 = 1;
