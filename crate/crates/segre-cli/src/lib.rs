//! Library side of the CLI: the state-file format and error classification,
//! kept separate from the binary so tests can drive them directly.

pub mod format;
