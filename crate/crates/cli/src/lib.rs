//! Report types, settings and verification targets of the `skdv` tool.

pub mod commands;
pub mod config;
pub mod report;
pub mod verify;

pub use config::{FileConfig, Settings};
pub use report::{overall, CheckReport, Comparison, Status};
pub use verify::{run, run_all, Target};
