//! Criterion benchmarks for `charmod`; see `benches/`.
