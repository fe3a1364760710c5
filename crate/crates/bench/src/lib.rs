//! Criterion benchmarks for `tv4-core`; see `benches/tv4.rs`.
//!
//! Run with `cargo bench -p tv4-bench`.
