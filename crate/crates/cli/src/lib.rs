//! Command-line reports and the acceptance suite.

pub mod commands;
pub mod config;
pub mod expr;
pub mod report;
pub mod suite;
