//! Experiment harness, file formats, and configuration for the `dyncell`
//! command-line tool.

pub mod config;
pub mod formats;
pub mod harness;
pub mod report;
