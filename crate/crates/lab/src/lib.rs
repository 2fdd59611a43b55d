//! File formats, experiment harness and CLI plumbing around `tsp-core`.

pub mod cli;
pub mod config;
pub mod error;
pub mod experiment;
pub mod format;
pub mod record;
pub mod stats;

pub use error::LabError;
