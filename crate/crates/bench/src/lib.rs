//! Criterion benchmarks for `meg-core`; see `benches/meg.rs`.
