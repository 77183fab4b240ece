//! Command-line front end: polynomial parsing, JSON input and report
//! rendering for the `monodromy` binary.

pub mod app;
pub mod error;
pub mod input;
pub mod poly;
pub mod report;

pub use app::{run, Outcome};
pub use error::CliError;
pub use poly::{parse_polynomial, ParseError};
