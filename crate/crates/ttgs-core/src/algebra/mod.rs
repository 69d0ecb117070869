//! The ternary tropical structure `(T, ⊕, F)`.
//!
//! `T = ℝ ∪ {+∞}` with `a ⊕ b = min(a, b)`; `⊕` is associative, commutative
//! and idempotent, and `+∞` is its neutral element. On top of the binary
//! minimum sits a ternary interaction `F: T³ → T`, indexed by a small family
//! of builtin operators ([`GammaOperator`]) with one absorbing convention:
//! `+∞` in any argument the operator actually depends on forces the result
//! to `+∞`.
//!
//! Edge triples `(cost, time, risk)` are folded into scalars by an
//! [`EvalMap`] before any labels are computed.
//!
//! None of the algebraic laws beyond the `⊕` ones are taken on faith: the
//! [`probe`] submodule samples monotonicity, distributivity over `⊕`, and
//! ternary associativity, and can sweep an exhaustive small-integer grid.

mod eval;
mod operator;
mod probe;
mod value;

pub use eval::EvalMap;
pub use operator::{GammaOperator, TernaryOp};
pub use probe::{
    probe_associative, probe_associative_grid, probe_distributive, probe_distributive_grid,
    probe_monotone, probe_monotone_grid, LawViolation, ProbeLaw, ProbeReport, GRID_MAX,
    MAX_RECORDED_VIOLATIONS,
};
pub use value::Value;

use thiserror::Error;

/// Errors from operator and eval-map construction or spec parsing.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("invalid operator parameters: {0}")]
    InvalidOperator(String),
    #[error("invalid eval parameters: {0}")]
    InvalidEvalMap(String),
    #[error("invalid spec `{spec}`: {reason}")]
    Spec { spec: String, reason: String },
}
