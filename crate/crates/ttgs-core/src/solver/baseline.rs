//! Classical single-source shortest paths, used as an external yardstick.
//!
//! When the ternary operator ignores its first argument and adds the other
//! two, the label recurrence collapses to ordinary edge relaxation
//! `d(v) ← min(d(v), d(u) + w(u, v))`; this module computes that directly so
//! the collapse can be checked against an implementation that shares no
//! code with the solver.

use crate::algebra::Value;
use crate::graph::Network;
use crate::solver::SolverError;

/// Output of one Bellman–Ford run.
#[derive(Debug, Clone, PartialEq)]
pub struct BaselineReport {
    pub distances: Vec<Value>,
    /// Tree predecessor of each vertex, `None` at the source and anywhere
    /// unreached.
    pub predecessors: Vec<Option<usize>>,
    /// An extra relaxation pass still improved some distance.
    pub negative_cycle: bool,
}

/// Runs `n − 1` passes of edge relaxation plus one detection pass.
pub fn bellman_ford_baseline(net: &Network) -> Result<BaselineReport, SolverError> {
    if !net.is_scalarized() {
        return Err(SolverError::NotScalarized);
    }
    let n = net.n();
    let mut distances = vec![f64::INFINITY; n];
    let mut predecessors: Vec<Option<usize>> = vec![None; n];
    distances[net.source()] = 0.0;

    let relax_pass = |distances: &mut [f64], predecessors: &mut [Option<usize>]| {
        let mut improved = false;
        for edge in net.edges() {
            if distances[edge.from].is_infinite() {
                continue;
            }
            let candidate = distances[edge.from] + edge.weight.expect("scalarized network").get();
            if candidate < distances[edge.to] {
                distances[edge.to] = candidate;
                predecessors[edge.to] = Some(edge.from);
                improved = true;
            }
        }
        improved
    };

    for _ in 1..n {
        if !relax_pass(&mut distances, &mut predecessors) {
            break;
        }
    }
    let mut probe = distances.clone();
    let mut probe_preds = predecessors.clone();
    let negative_cycle = relax_pass(&mut probe, &mut probe_preds);

    Ok(BaselineReport {
        distances: distances.into_iter().map(Value::new).collect(),
        predecessors,
        negative_cycle,
    })
}
