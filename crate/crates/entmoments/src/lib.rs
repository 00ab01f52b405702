//! File formats and the `entmoments` command-line tool on top of
//! [`entmoments_core`].
//!
//! Library use goes through [`cli::execute`], which returns a
//! [`output::Report`] (a CSV table, an optional JSON document, an optional
//! θ-distribution table and stderr notes) without touching the filesystem
//! beyond reading inputs.

pub mod cli;
pub mod commands;
pub mod error;
pub mod input;
pub mod output;
pub mod random;
