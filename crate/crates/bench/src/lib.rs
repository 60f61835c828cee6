//! Criterion benchmarks for the simulation core live in `benches/`.
