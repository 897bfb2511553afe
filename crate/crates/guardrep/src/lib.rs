//! File formats, seeded generators, randomized property suites and the
//! `guardrep` command line on top of [`guardrep_core`].

pub mod cli;
pub mod error;
pub mod format;
pub mod generate;
pub mod verify;

pub use error::{Error, Result};
