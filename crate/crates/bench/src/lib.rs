//! Criterion benchmarks for the optimizer live under `benches/`.
