//! Presets, batch verification and JSON reports for the seven-term sequence.

pub mod battery;
pub mod doc;
pub mod error;
pub mod preset;
pub mod run;

pub use error::{Result, WorkbenchError};
