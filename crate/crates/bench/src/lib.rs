//! Shared fixtures for the benchmarks.

use quatheta::order::{build_classes, IdealClassSet};
use quatheta::qform::LevelConfig;

/// The three reference levels as `(name, ramified primes, M)`.
pub const LEVELS: [(&str, &[u64], u64); 3] = [("11", &[11], 1), ("66", &[2, 3, 11], 1), ("210", &[2, 3, 7], 5)];

pub fn config(ramified: &[u64], m: u64) -> LevelConfig {
    LevelConfig::new(ramified, m).expect("reference level is valid")
}

pub fn classes(ramified: &[u64], m: u64) -> IdealClassSet {
    build_classes(&config(ramified, m)).expect("class enumeration succeeds")
}
