//! Criterion benchmarks for `ybx-core`; see `benches/`.
