//! Experiment drivers, report writers and the `cctool` subcommands.

pub mod commands;
pub mod experiments;
pub mod report;
