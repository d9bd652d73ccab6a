//! Criterion benchmarks for the obtsim protocols live under `benches/`.
