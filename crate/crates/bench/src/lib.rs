//! Criterion benchmarks for `arrowcat`; see `benches/kernel.rs`.
