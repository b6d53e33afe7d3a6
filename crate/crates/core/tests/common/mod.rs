#![allow(dead_code)]

use proptest::prelude::*;
use ssi_core::random::{self, Rng64};

pub fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        ..ProptestConfig::default()
    }
}

/// Seeds drive the crate's own samplers so every case is reproducible.
pub fn seeded() -> impl Strategy<Value = Rng64> {
    any::<u64>().prop_map(random::rng)
}
