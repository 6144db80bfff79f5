//! Shared inputs for the criterion benches.

use groupinv_core::generate::{generate, Family, GenParams};
use groupinv_core::RMatrix;

/// A fixed batch of class-D instances of roughly `n` vertices.
pub fn class_d_batch(max_n: usize, count: u64) -> Vec<RMatrix> {
    let params = GenParams { max_n, ..GenParams::default() };
    (0..count)
        .map(|i| generate(Family::ClassD, 2024, i, &params).expect("generator").matrix)
        .collect()
}
