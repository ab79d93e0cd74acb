//! Command-line front end for `optrig`.
//!
//! Every subcommand prints one JSON [`json::ReportEnvelope`] on standard
//! output. CSV and SVG files are written only when asked for.

mod commands;
pub mod error;
pub mod json;
pub mod matrix_file;
pub mod svg;

pub use commands::{
    run, AnglePlotReport, AnglePoint, BatchEntry, FieldSummary, FinanceReport, PlotReport, TripleList,
    TripleRow,
};
pub use error::CliError;
