//! Criterion benchmarks for `floplab-core`; see `benches/`.
