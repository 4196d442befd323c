//! Benchmark-only crate; see `benches/dp.rs`.
