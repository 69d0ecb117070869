//! The two-predecessor label solver.
//!
//! Labels start at `d⁰(source) = 0`, `d⁰(v) = ∞` elsewhere and are driven
//! toward a fixpoint of
//!
//! ```text
//! d(v) ← d(v) ⊕ min over fragments (p, u) of  F(d(p), d(u), w(u, v))
//! ```
//!
//! where a *fragment* pairs an in-edge `(u, v)` with a predecessor token `p`
//! of `u`; the virtual start-of-walk token contributes a constant `0` and
//! exists only at the source. Two schedules are offered: `Synchronous`
//! evaluates every fragment against the previous iteration's labels (Jacobi
//! style), `InPlace` consumes updates immediately (Gauss–Seidel style).
//! Labels never increase, so the first sweep that changes nothing proves a
//! fixpoint and iteration stops there.
//!
//! Ties are broken deterministically. Within one synchronous iteration the
//! winning fragment for `v` minimizes `(value, p, u, edge id)`
//! lexicographically, with the virtual token ordered before every vertex;
//! a candidate merely equal to the standing label leaves both the label and
//! its witness untouched.
//!
//! Every fragment evaluation is counted: one sweep costs exactly
//! `Σ_(u,v)∈E |predecessors(u)|` evaluations, and the report keeps both the
//! per-iteration counts and their total. A run that exhausts its iteration
//! cap without stabilizing triggers one extra *detection* sweep, excluded
//! from the accounting, which either certifies the fixpoint or flags a
//! value-improving cycle.

mod baseline;

pub use baseline::{bellman_ford_baseline, BaselineReport};

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::algebra::{GammaOperator, TernaryOp, Value};
use crate::graph::{Network, Predecessor};
use crate::TOLERANCE;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("network is not scalarized; apply an eval map first")]
    NotScalarized,
    #[error("vertex {vertex} has no witness: no walk from the source reached it")]
    NoWitness { vertex: usize },
    #[error("vertex {vertex} out of range for a network with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
}

/// Update discipline for one relaxation sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Schedule {
    /// All fragments read the previous iteration's labels.
    Synchronous,
    /// Fragments read labels as they are being updated, in edge-id order.
    InPlace,
}

impl fmt::Display for Schedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Schedule::Synchronous => write!(f, "synchronous"),
            Schedule::InPlace => write!(f, "in-place"),
        }
    }
}

impl FromStr for Schedule {
    type Err = String;

    fn from_str(text: &str) -> Result<Schedule, String> {
        match text {
            "synchronous" => Ok(Schedule::Synchronous),
            "in-place" => Ok(Schedule::InPlace),
            other => Err(format!(
                "unknown schedule `{other}` (expected `synchronous` or `in-place`)"
            )),
        }
    }
}

/// How a vertex obtained its current label.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Witness {
    /// The source's initial label.
    Origin,
    /// The winning fragment: predecessor token `pred` paired with the
    /// network edge `edge` into the vertex.
    Fragment { pred: Predecessor, edge: usize },
}

/// One labelling of all vertices, with the fragment that last improved each.
#[derive(Debug, Clone, PartialEq)]
pub struct LabelVector {
    pub labels: Vec<Value>,
    pub witnesses: Vec<Option<Witness>>,
}

impl LabelVector {
    /// Source at zero, everything else unreached.
    pub fn initial(n: usize, source: usize) -> LabelVector {
        let mut labels = vec![Value::INFINITY; n];
        let mut witnesses = vec![None; n];
        labels[source] = Value::ZERO;
        witnesses[source] = Some(Witness::Origin);
        LabelVector { labels, witnesses }
    }
}

/// Everything one solver run produces.
#[derive(Debug, Clone)]
pub struct SolveReport {
    pub gamma: GammaOperator,
    pub schedule: Schedule,
    pub final_labels: LabelVector,
    /// Sweeps actually executed (the stabilizing sweep included).
    pub iterations_run: usize,
    /// Smallest `ℓ` with `d⁽ℓ⁾ = d⁽ℓ⁺¹⁾`, when that was established.
    pub converged_at: Option<usize>,
    /// A post-cap detection sweep still found a strict improvement.
    pub improving_cycle: bool,
    pub relaxations_total: u64,
    pub relaxations_per_iteration: Vec<u64>,
    /// Label history `d⁰ … d⁽ᵏ⁾` when tracing was requested.
    pub per_iteration_labels: Option<Vec<LabelVector>>,
}

/// Candidate fragments are ranked by this tuple: value first, then the
/// predecessor token, the tail vertex, and finally the edge id.
type Candidate = (Value, Predecessor, usize, usize);

/// One synchronous sweep: returns the next label vector and the number of
/// fragment evaluations performed. The input network must be scalarized.
pub fn relax_step_synchronous<F: TernaryOp + ?Sized>(
    current: &LabelVector,
    net: &Network,
    op: &F,
) -> (LabelVector, u64) {
    let mut best: Vec<Option<Candidate>> = vec![None; net.n()];
    let mut evaluations = 0u64;
    for (edge_id, edge) in net.edges().iter().enumerate() {
        let weight = edge.weight.expect("scalarized network");
        let mid = current.labels[edge.from];
        let mut offer = |pred: Predecessor, first: Value| {
            evaluations += 1;
            let value = op.apply(first, mid, weight);
            let candidate = (value, pred, edge.from, edge_id);
            let slot = &mut best[edge.to];
            if slot.map_or(true, |incumbent| candidate < incumbent) {
                *slot = Some(candidate);
            }
        };
        if edge.from == net.source() {
            offer(Predecessor::Virtual, Value::ZERO);
        }
        for &p in net.in_neighbors(edge.from) {
            offer(Predecessor::Vertex(p), current.labels[p]);
        }
    }

    let mut next = current.clone();
    for (v, candidate) in best.into_iter().enumerate() {
        if let Some((value, pred, _, edge)) = candidate {
            if value.strictly_improves(current.labels[v]) {
                next.labels[v] = value;
                next.witnesses[v] = Some(Witness::Fragment { pred, edge });
            }
        }
    }
    (next, evaluations)
}

/// One in-place sweep over edges in id order. Returns whether anything
/// changed and the number of fragment evaluations.
fn relax_sweep_in_place<F: TernaryOp + ?Sized>(
    state: &mut LabelVector,
    net: &Network,
    op: &F,
) -> (bool, u64) {
    let mut changed = false;
    let mut evaluations = 0u64;
    for (edge_id, edge) in net.edges().iter().enumerate() {
        let weight = edge.weight.expect("scalarized network");
        let virtual_first = (edge.from == net.source())
            .then_some((Predecessor::Virtual, Value::ZERO))
            .into_iter();
        let vertex_tokens = net
            .in_neighbors(edge.from)
            .iter()
            .map(|&p| (Predecessor::Vertex(p), state.labels[p]));
        // Collect so the closure below may mutate `state.labels`.
        let fragments: Vec<(Predecessor, Value)> = virtual_first.chain(vertex_tokens).collect();
        for (pred, first) in fragments {
            evaluations += 1;
            let value = op.apply(first, state.labels[edge.from], weight);
            if value.strictly_improves(state.labels[edge.to]) {
                state.labels[edge.to] = value;
                state.witnesses[edge.to] = Some(Witness::Fragment { pred, edge: edge_id });
                changed = true;
            }
        }
    }
    (changed, evaluations)
}

/// True when one synchronous probe sweep over `state` would still strictly
/// improve some label. Stability under this probe coincides with stability
/// under the in-place sweep, so the same test serves both schedules. The
/// probe's evaluations are not part of any accounting.
pub fn detect_improving_cycle<F: TernaryOp + ?Sized>(
    state: &LabelVector,
    net: &Network,
    op: &F,
) -> bool {
    let (next, _) = relax_step_synchronous(state, net, op);
    next.labels != state.labels
}

/// Runs the label recurrence to a fixpoint or an iteration cap.
///
/// The cap defaults to `n − 1` sweeps. A sweep that changes nothing ends the
/// run early and pins `converged_at` to the preceding index. If the cap is
/// exhausted after at least `n − 1` sweeps, one uncounted detection sweep
/// decides between `converged_at = iterations_run` and `improving_cycle`.
/// Runs truncated below `n − 1` sweeps report neither.
pub fn solve(
    net: &Network,
    op: &GammaOperator,
    schedule: Schedule,
    max_iterations: Option<usize>,
    trace: bool,
) -> Result<SolveReport, SolverError> {
    if !net.is_scalarized() {
        return Err(SolverError::NotScalarized);
    }
    let n = net.n();
    let cap = max_iterations.unwrap_or(n.saturating_sub(1));

    let mut state = LabelVector::initial(n, net.source());
    let mut history = trace.then(|| vec![state.clone()]);
    let mut iterations_run = 0usize;
    let mut converged_at = None;
    let mut relaxations_per_iteration = Vec::new();

    while iterations_run < cap {
        let (next, evaluations, changed) = match schedule {
            Schedule::Synchronous => {
                let (next, evaluations) = relax_step_synchronous(&state, net, op);
                let changed = next.labels != state.labels;
                (next, evaluations, changed)
            }
            Schedule::InPlace => {
                let mut next = state.clone();
                let (changed, evaluations) = relax_sweep_in_place(&mut next, net, op);
                (next, evaluations, changed)
            }
        };
        iterations_run += 1;
        relaxations_per_iteration.push(evaluations);
        state = next;
        if let Some(history) = history.as_mut() {
            history.push(state.clone());
        }
        if !changed {
            converged_at = Some(iterations_run - 1);
            break;
        }
    }

    let mut improving_cycle = false;
    if converged_at.is_none() && iterations_run >= n.saturating_sub(1) {
        if detect_improving_cycle(&state, net, op) {
            improving_cycle = true;
        } else {
            converged_at = Some(iterations_run);
        }
    }

    Ok(SolveReport {
        gamma: op.clone(),
        schedule,
        iterations_run,
        converged_at,
        improving_cycle,
        relaxations_total: relaxations_per_iteration.iter().sum(),
        relaxations_per_iteration,
        per_iteration_labels: history,
        final_labels: state,
    })
}

/// A witness chain unwound back to the source.
#[derive(Debug, Clone, PartialEq)]
pub struct WitnessChain {
    /// Vertex sequence from the source to the queried vertex.
    pub vertices: Vec<usize>,
    /// Edge ids along that sequence.
    pub edges: Vec<usize>,
    /// The label recurrence replayed along the chain's own weights.
    pub recomputed: Value,
    /// Replay matches the stored label within tolerance. Mixed labels,
    /// which combine accumulators of different walks, fail this check.
    pub consistent: bool,
}

/// Follows witnesses from `vertex` back to the source and replays the
/// recurrence along the recovered edges.
pub fn reconstruct_witness(
    report: &SolveReport,
    net: &Network,
    vertex: usize,
) -> Result<WitnessChain, SolverError> {
    let n = net.n();
    if vertex >= n {
        return Err(SolverError::VertexOutOfRange { vertex, n });
    }

    let mut vertices = vec![vertex];
    let mut edges = Vec::new();
    let mut at = vertex;
    let mut reached_origin = false;
    for _ in 0..n {
        match report.final_labels.witnesses[at] {
            None => return Err(SolverError::NoWitness { vertex: at }),
            Some(Witness::Origin) => {
                reached_origin = true;
                break;
            }
            Some(Witness::Fragment { edge, .. }) => {
                at = net.edges()[edge].from;
                edges.push(edge);
                vertices.push(at);
            }
        }
    }
    vertices.reverse();
    edges.reverse();

    if !reached_origin {
        // The witness graph loops; no finite replay exists.
        return Ok(WitnessChain {
            vertices,
            edges,
            recomputed: Value::INFINITY,
            consistent: false,
        });
    }

    let mut pair = (Value::ZERO, Value::ZERO);
    for &edge in &edges {
        let weight = net.edges()[edge].weight.expect("scalarized network");
        let next = report.gamma.apply(pair.0, pair.1, weight);
        pair = (pair.1, next);
    }
    let recomputed = pair.1;
    let consistent = recomputed.approx_eq(report.final_labels.labels[vertex], TOLERANCE);
    Ok(WitnessChain {
        vertices,
        edges,
        recomputed,
        consistent,
    })
}
