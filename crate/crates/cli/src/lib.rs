//! Batch front end: read JSON inputs, run one check, emit a JSON report.

pub mod commands;
pub mod formats;

pub use commands::{run, Command, Manifest, Outcome, EXIT_FAIL, EXIT_INPUT, EXIT_PASS};
pub use formats::{parse_document, parse_input, Document, InputError};
