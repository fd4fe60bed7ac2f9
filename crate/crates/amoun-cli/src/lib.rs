//! Standard-library companion to the `amoun` crate: file formats, the
//! benchmark harness, parallel encryption, and the command implementations
//! behind the `amoun` binary.

pub mod bench;
pub mod commands;
pub mod format;
pub mod parallel;
