//! Benchmarks for `vlh-core`; see `benches/`.
