//! Shared instance builders for the criterion benchmarks.

use ttgs_core::{EvalMap, Network};

/// A seeded random network, scalarized with the even weighted sum.
pub fn scalarized(n: usize, p: f64, seed: u64) -> Network {
    let eval = EvalMap::weighted_sum([1.0, 1.0, 1.0]).unwrap();
    Network::generate_random(n, p, [(0.0, 100.0); 3], seed)
        .unwrap()
        .scalarize(&eval)
}
