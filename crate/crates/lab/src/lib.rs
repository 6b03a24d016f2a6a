//! IO, file formats, parallel drivers and the command-line front end for
//! `sgthresh-core`.
//!
//! Parallel entry points in [`par`] split work into fixed chunks whose
//! results combine by keyed addition or plain sums, so outputs never depend
//! on the thread count.

pub mod cli;
pub mod corpus;
mod error;
pub mod export;
pub mod formats;
pub mod par;
pub mod scaling;
pub mod suite;

pub use error::{LabError, LabResult};
