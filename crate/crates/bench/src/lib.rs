//! Criterion benchmarks for `maghom`; see `benches/`.
