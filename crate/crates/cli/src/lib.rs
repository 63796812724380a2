//! Command-line front end: result tables, the on-disk cache and the command
//! implementations shared by the `qkz` binary and its tests.

pub mod cache;
pub mod run;
pub mod table;
