//! Benchmark-only crate; see the `benches/` directory for the Criterion
//! targets. No library code lives here.
