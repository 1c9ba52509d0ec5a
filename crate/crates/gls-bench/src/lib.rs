//! Benchmark-only crate; see `benches/main.rs`.
//!
//! Shared fixtures live in `gls_core::fixtures` so that benchmarks measure
//! exactly the configurations the tests pin down.
