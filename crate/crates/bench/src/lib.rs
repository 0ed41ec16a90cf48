//! Criterion benchmarks for `corematch`. See `benches/core_ops.rs`.
