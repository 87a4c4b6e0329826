//! Criterion benchmarks for the kernels and the solver live under `benches/`.
