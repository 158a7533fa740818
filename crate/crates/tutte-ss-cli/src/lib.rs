//! Command-line companion to the `tutte-ss` library: canonical JSON and
//! CSV serialization, the oracle-vs-recursion verification suite, and
//! per-level benchmarking. The binary in this package wires these into
//! subcommands; the pieces live in a library so integration tests can
//! drive them directly.

pub mod bench;
pub mod json;
pub mod verify;
