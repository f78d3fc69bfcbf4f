//! Shared fixtures for the criterion benchmarks.

use std::sync::Arc;

use streamfold::bench::{generate_values, BenchConfig};

/// Seeded benchmark values, shared so every measured pipeline reads the same array.
pub fn prime_workload(num_values: usize, max_value: i64) -> Arc<[i64]> {
    let cfg = BenchConfig {
        num_values,
        max_value,
        seed: Some(0x5eed),
        ..BenchConfig::default()
    };
    generate_values(&cfg).into()
}
