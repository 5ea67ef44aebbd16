//! Command-line front end: flat config parsing and the command
//! implementations behind the `sqz` binary.

pub mod commands;
pub mod config;
