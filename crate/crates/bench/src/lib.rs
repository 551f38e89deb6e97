//! Criterion benchmarks for the normal-form engine live in `benches/`.
