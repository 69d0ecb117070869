//! Ternary tropical pathfinding over triple-weighted directed networks.
//!
//! The cost domain is `ℝ ∪ {+∞}` under idempotent minimum, combined with a
//! family of ternary interaction operators `F(x, y, z)`. Labels are computed
//! by a dynamic program that relaxes two-step fragments `p → u → v` instead
//! of single edges:
//!
//! ```text
//! d(v) ← d(v) ⊕ min over fragments of F(d(p), d(u), w(u, v))
//! ```
//!
//! The crate is organised as four modules:
//!
//! * [`algebra`] — the `(min, F)` structure: extended-real values, the
//!   builtin operator families, edge-triple evaluation maps, and randomized
//!   plus exhaustive law probes.
//! * [`graph`] — triple-weighted networks, the `ttgn` text format, the
//!   random generator, and scalarization.
//! * [`solver`] — the label-correcting dynamic program (synchronous and
//!   in-place schedules), improving-cycle detection, a classical binary
//!   baseline, and witness reconstruction.
//! * [`oracle`] — exhaustive walk enumeration and path-cost definitions used
//!   as ground truth when checking solver output.

pub mod algebra;
pub mod graph;
pub mod oracle;
pub mod solver;

pub use algebra::{
    AlgebraError, EvalMap, GammaOperator, LawViolation, ProbeLaw, ProbeReport, TernaryOp, Value,
};
pub use graph::{Edge, EdgeTriple, GraphError, Network, Predecessor};
pub use oracle::{
    enumerate_optimal, enumerate_optimal_with, path_cost_nested, path_cost_windows, verify_bounds,
    BoundsCheck, OracleError, VertexBound, WalkCostTable, WalkPolicy,
};
pub use solver::{
    bellman_ford_baseline, detect_improving_cycle, reconstruct_witness, relax_step_synchronous,
    solve, BaselineReport, LabelVector, Schedule, SolveReport, SolverError, Witness, WitnessChain,
};

/// Absolute tolerance used by every numeric law and label comparison.
pub const TOLERANCE: f64 = 1e-9;

/// Seed used by randomized probes and generators when none is given.
pub const DEFAULT_SEED: u64 = 0;
