//! Criterion benchmarks for the engines; run with `cargo bench -p gwell-bench`.
