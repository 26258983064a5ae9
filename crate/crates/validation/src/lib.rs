//! Acceptance runs for the workspace live in `tests/acceptance.rs`.
//!
//! This package sits last in test order so that a failing criterion does
//! not stop the other test targets from running.
