//! End-to-end checks live in `tests/acceptance.rs`.
