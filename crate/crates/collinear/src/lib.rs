//! Files, sampling, parallel drivers and the command line for
//! [`collinear_core`].
//!
//! The `collinear` binary wraps [`cli::main`]; the acceptance suites in
//! [`verify`] are also callable directly.

pub mod cli;
pub mod error;
pub mod fixtures;
pub mod formats;
pub mod oracle;
pub mod par;
pub mod report;
pub mod sample;
pub mod verify;

pub use error::{Error, Result};
