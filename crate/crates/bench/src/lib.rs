//! Benchmarks for degamma-core live under benches/.
