//! Job runner, self-checks and randomized suites behind the `tauforge` binary.

pub mod job;
pub mod selfcheck;
pub mod suites;
