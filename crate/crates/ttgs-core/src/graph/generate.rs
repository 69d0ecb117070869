use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{EdgeTriple, GraphError, Network};

pub(super) fn generate(
    n: usize,
    edge_prob: f64,
    ranges: [(f64, f64); 3],
    seed: u64,
) -> Result<Network, GraphError> {
    if n == 0 {
        return Err(GraphError::InvalidGenerator(
            "vertex count must be at least 1".into(),
        ));
    }
    if !edge_prob.is_finite() || !(0.0..=1.0).contains(&edge_prob) {
        return Err(GraphError::InvalidGenerator(format!(
            "edge probability must be in [0, 1], got {edge_prob}"
        )));
    }
    for (lo, hi) in ranges {
        if !lo.is_finite() || !hi.is_finite() || lo > hi {
            return Err(GraphError::InvalidGenerator(format!(
                "bad component range ({lo}, {hi})"
            )));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for from in 0..n {
        for to in 0..n {
            if from == to {
                continue;
            }
            if rng.gen_bool(edge_prob) {
                let mut components = [0.0f64; 3];
                for (slot, (lo, hi)) in components.iter_mut().zip(ranges) {
                    *slot = rng.gen_range(lo..=hi);
                }
                let triple = EdgeTriple {
                    cost: components[0],
                    time: components[1],
                    risk: components[2],
                };
                edges.push((from, to, triple));
            }
        }
    }

    let allow_negative = ranges.iter().any(|&(lo, _)| lo < 0.0);
    Network::new(n, 0, edges, allow_negative)
}
