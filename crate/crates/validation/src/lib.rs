//! Holds the acceptance run (`tests/acceptance.rs`). Kept as its own package so
//! that `cargo test --workspace` reaches it after every other suite.
