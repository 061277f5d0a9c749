//! Command-line front end for `gdis-core`.
//!
//! Exit codes: 0 success, 1 the input fails the requested physical check
//! (not a quantum state, not symplectic, entangled under `ppt`), 2 malformed
//! input, 3 internal verification failure.

pub mod commands;
pub mod document;

pub use commands::{reverify_disentangle_report, run, Cli, Command, Outcome};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_MALFORMED: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;
