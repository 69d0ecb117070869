//! Empirical law probes for ternary operators.
//!
//! Three laws are probed, each against the crate-wide absolute tolerance:
//!
//! * monotonicity — growing one argument never shrinks the result;
//! * distributivity over `⊕` — `F(a ⊕ b, y, z) = F(a,y,z) ⊕ F(b,y,z)` in
//!   every argument position;
//! * ternary associativity — the three ways of nesting a 5-tuple,
//!   `F(F(x,y,z),u,v)`, `F(x,F(y,z,u),v)` and `F(x,y,F(z,u,v))`, agree.
//!
//! Each law comes in a randomized flavour (uniform samples from `[0, 100]`,
//! seeded) and an exhaustive flavour sweeping the integer grid
//! `{0, …, GRID_MAX}`. The grid sweep is slower but leaves nothing to
//! sampling luck, which is what makes it usable as ground truth: a family
//! that survives the grid genuinely satisfies the law there, and a family
//! that fails it fails at a concrete, replayable tuple.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{TernaryOp, Value};
use crate::TOLERANCE;

/// Upper end of the exhaustive integer grid `{0, …, GRID_MAX}`.
pub const GRID_MAX: u32 = 10;

/// Violations stored per report; the total count keeps counting past this.
pub const MAX_RECORDED_VIOLATIONS: usize = 256;

/// Range sampled by the randomized probes.
const SAMPLE_RANGE: std::ops::RangeInclusive<f64> = 0.0..=100.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProbeLaw {
    Monotonicity,
    Distributivity,
    Associativity,
}

impl ProbeLaw {
    pub fn name(self) -> &'static str {
        match self {
            ProbeLaw::Monotonicity => "monotonicity",
            ProbeLaw::Distributivity => "distributivity",
            ProbeLaw::Associativity => "associativity",
        }
    }
}

/// One concrete, replayable law violation.
#[derive(Debug, Clone, PartialEq)]
pub enum LawViolation {
    /// `F` at `args` with `args[position] += delta` dropped from `before`
    /// to `after`.
    Monotone {
        args: [Value; 3],
        position: usize,
        delta: f64,
        before: Value,
        after: Value,
    },
    /// `F` with `min(a, b)` in `position` (the other two slots filled by
    /// `rest` in order) differs from the min of the two direct evaluations.
    Distributive {
        a: Value,
        b: Value,
        rest: [Value; 2],
        position: usize,
        lhs: Value,
        rhs: Value,
    },
    /// Two nestings of the same 5-tuple disagree; nesting indices follow
    /// the order outer-left (0), middle (1), inner-right (2).
    Associative {
        args: [Value; 5],
        lhs_nesting: usize,
        rhs_nesting: usize,
        lhs: Value,
        rhs: Value,
    },
}

impl LawViolation {
    pub fn law(&self) -> ProbeLaw {
        match self {
            LawViolation::Monotone { .. } => ProbeLaw::Monotonicity,
            LawViolation::Distributive { .. } => ProbeLaw::Distributivity,
            LawViolation::Associative { .. } => ProbeLaw::Associativity,
        }
    }

    /// Re-evaluates the recorded tuple and confirms it still violates the
    /// law under `op`.
    pub fn replays<F: TernaryOp + ?Sized>(&self, op: &F) -> bool {
        match *self {
            LawViolation::Monotone {
                args,
                position,
                delta,
                ..
            } => {
                let before = op.apply(args[0], args[1], args[2]);
                let mut bumped = args;
                bumped[position] = Value::new(bumped[position].get() + delta);
                let after = op.apply(bumped[0], bumped[1], bumped[2]);
                after.get() < before.get() - TOLERANCE
            }
            LawViolation::Distributive {
                a,
                b,
                rest,
                position,
                ..
            } => {
                let (lhs, rhs) = distributive_sides(op, a, b, rest, position);
                !lhs.approx_eq(rhs, TOLERANCE)
            }
            LawViolation::Associative {
                args,
                lhs_nesting,
                rhs_nesting,
                ..
            } => {
                let lhs = nest(op, args, lhs_nesting);
                let rhs = nest(op, args, rhs_nesting);
                !lhs.approx_eq(rhs, TOLERANCE)
            }
        }
    }
}

/// Outcome of a probe run. `counterexamples` is nonempty exactly when
/// `violations > 0`, though it is capped at [`MAX_RECORDED_VIOLATIONS`]
/// entries while `violations` keeps the true count.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbeReport {
    pub law: ProbeLaw,
    pub samples_tested: u64,
    pub violations: u64,
    pub counterexamples: Vec<LawViolation>,
}

impl ProbeReport {
    fn new(law: ProbeLaw) -> ProbeReport {
        ProbeReport {
            law,
            samples_tested: 0,
            violations: 0,
            counterexamples: Vec::new(),
        }
    }

    pub fn law_holds(&self) -> bool {
        self.violations == 0
    }

    fn record(&mut self, violation: LawViolation) {
        self.violations += 1;
        if self.counterexamples.len() < MAX_RECORDED_VIOLATIONS {
            self.counterexamples.push(violation);
        }
    }
}

/// Puts `value` in `position` and fills the remaining slots with `rest`,
/// preserving their order.
fn place(value: Value, rest: [Value; 2], position: usize) -> [Value; 3] {
    match position {
        0 => [value, rest[0], rest[1]],
        1 => [rest[0], value, rest[1]],
        2 => [rest[0], rest[1], value],
        _ => unreachable!("argument position out of range"),
    }
}

fn distributive_sides<F: TernaryOp + ?Sized>(
    op: &F,
    a: Value,
    b: Value,
    rest: [Value; 2],
    position: usize,
) -> (Value, Value) {
    let merged = place(a.oplus(b), rest, position);
    let left = place(a, rest, position);
    let right = place(b, rest, position);
    let lhs = op.apply(merged[0], merged[1], merged[2]);
    let rhs = op
        .apply(left[0], left[1], left[2])
        .oplus(op.apply(right[0], right[1], right[2]));
    (lhs, rhs)
}

/// The three nestings of a 5-tuple, indexed 0 (outer-left), 1 (middle),
/// 2 (inner-right).
fn nest<F: TernaryOp + ?Sized>(op: &F, t: [Value; 5], nesting: usize) -> Value {
    match nesting {
        0 => op.apply(op.apply(t[0], t[1], t[2]), t[3], t[4]),
        1 => op.apply(t[0], op.apply(t[1], t[2], t[3]), t[4]),
        2 => op.apply(t[0], t[1], op.apply(t[2], t[3], t[4])),
        _ => unreachable!("nesting index out of range"),
    }
}

fn check_monotone<F: TernaryOp + ?Sized>(
    op: &F,
    args: [Value; 3],
    position: usize,
    delta: f64,
    report: &mut ProbeReport,
) {
    let before = op.apply(args[0], args[1], args[2]);
    let mut bumped = args;
    bumped[position] = Value::new(bumped[position].get() + delta);
    let after = op.apply(bumped[0], bumped[1], bumped[2]);
    if after.get() < before.get() - TOLERANCE {
        report.record(LawViolation::Monotone {
            args,
            position,
            delta,
            before,
            after,
        });
    }
}

fn check_distributive<F: TernaryOp + ?Sized>(
    op: &F,
    a: Value,
    b: Value,
    rest: [Value; 2],
    position: usize,
    report: &mut ProbeReport,
) {
    let (lhs, rhs) = distributive_sides(op, a, b, rest, position);
    if !lhs.approx_eq(rhs, TOLERANCE) {
        report.record(LawViolation::Distributive {
            a,
            b,
            rest,
            position,
            lhs,
            rhs,
        });
    }
}

fn check_associative<F: TernaryOp + ?Sized>(op: &F, args: [Value; 5], report: &mut ProbeReport) {
    let values = [nest(op, args, 0), nest(op, args, 1), nest(op, args, 2)];
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        if !values[i].approx_eq(values[j], TOLERANCE) {
            report.record(LawViolation::Associative {
                args,
                lhs_nesting: i,
                rhs_nesting: j,
                lhs: values[i],
                rhs: values[j],
            });
            return;
        }
    }
}

/// Randomized monotonicity probe: per sample, each of the three arguments
/// is bumped by a fresh positive delta.
pub fn probe_monotone<F: TernaryOp + ?Sized>(op: &F, samples: u64, seed: u64) -> ProbeReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = ProbeReport::new(ProbeLaw::Monotonicity);
    for _ in 0..samples {
        let args = sample_args(&mut rng);
        report.samples_tested += 1;
        for position in 0..3 {
            let delta = rng.gen_range(1e-6..=10.0);
            check_monotone(op, args, position, delta, &mut report);
        }
    }
    report
}

/// Randomized distributivity probe; all three argument positions are
/// checked on every sample.
pub fn probe_distributive<F: TernaryOp + ?Sized>(op: &F, samples: u64, seed: u64) -> ProbeReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = ProbeReport::new(ProbeLaw::Distributivity);
    for _ in 0..samples {
        let a = sample_value(&mut rng);
        let b = sample_value(&mut rng);
        let rest = [sample_value(&mut rng), sample_value(&mut rng)];
        report.samples_tested += 1;
        for position in 0..3 {
            check_distributive(op, a, b, rest, position, &mut report);
        }
    }
    report
}

/// Randomized associativity probe over 5-tuples; a tuple counts as one
/// violation if any pair of nestings disagrees.
pub fn probe_associative<F: TernaryOp + ?Sized>(op: &F, samples: u64, seed: u64) -> ProbeReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = ProbeReport::new(ProbeLaw::Associativity);
    for _ in 0..samples {
        let args = [
            sample_value(&mut rng),
            sample_value(&mut rng),
            sample_value(&mut rng),
            sample_value(&mut rng),
            sample_value(&mut rng),
        ];
        report.samples_tested += 1;
        check_associative(op, args, &mut report);
    }
    report
}

/// Exhaustive monotonicity sweep: every grid triple, every position, with
/// a unit bump.
pub fn probe_monotone_grid<F: TernaryOp + ?Sized>(op: &F) -> ProbeReport {
    let mut report = ProbeReport::new(ProbeLaw::Monotonicity);
    for_grid3(|args| {
        report.samples_tested += 1;
        for position in 0..3 {
            check_monotone(op, args, position, 1.0, &mut report);
        }
    });
    report
}

/// Exhaustive distributivity sweep over grid 4-tuples and all positions.
pub fn probe_distributive_grid<F: TernaryOp + ?Sized>(op: &F) -> ProbeReport {
    let mut report = ProbeReport::new(ProbeLaw::Distributivity);
    let points = grid_points();
    for &a in &points {
        for &b in &points {
            for &r0 in &points {
                for &r1 in &points {
                    report.samples_tested += 1;
                    for position in 0..3 {
                        check_distributive(op, a, b, [r0, r1], position, &mut report);
                    }
                }
            }
        }
    }
    report
}

/// Exhaustive associativity sweep over grid 5-tuples, in lexicographic
/// order, so the first violations recorded are the smallest tuples.
pub fn probe_associative_grid<F: TernaryOp + ?Sized>(op: &F) -> ProbeReport {
    let mut report = ProbeReport::new(ProbeLaw::Associativity);
    let points = grid_points();
    for &x in &points {
        for &y in &points {
            for &z in &points {
                for &u in &points {
                    for &v in &points {
                        report.samples_tested += 1;
                        check_associative(op, [x, y, z, u, v], &mut report);
                    }
                }
            }
        }
    }
    report
}

fn sample_value(rng: &mut ChaCha8Rng) -> Value {
    Value::new(rng.gen_range(SAMPLE_RANGE))
}

fn sample_args(rng: &mut ChaCha8Rng) -> [Value; 3] {
    [
        sample_value(rng),
        sample_value(rng),
        sample_value(rng),
    ]
}

fn grid_points() -> Vec<Value> {
    (0..=GRID_MAX).map(|i| Value::new(f64::from(i))).collect()
}

fn for_grid3(mut body: impl FnMut([Value; 3])) {
    let points = grid_points();
    for &x in &points {
        for &y in &points {
            for &z in &points {
                body([x, y, z]);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GammaOperator;

    /// Deliberately law-breaking fixture: decreasing in its first argument.
    struct NonMonotoneOp;

    impl TernaryOp for NonMonotoneOp {
        fn apply(&self, x: Value, y: Value, z: Value) -> Value {
            if x.is_infinite() || y.is_infinite() || z.is_infinite() {
                Value::INFINITY
            } else {
                Value::new(-x.get() + y.get() + z.get())
            }
        }
    }

    #[test]
    fn builtin_families_are_monotone() {
        let ops = [
            GammaOperator::linear(),
            GammaOperator::weighted([1.0, 2.0, 3.0]).unwrap(),
            GammaOperator::risk_amp(0.5).unwrap(),
        ];
        for op in &ops {
            let random = probe_monotone(op, 10_000, crate::DEFAULT_SEED);
            assert!(random.law_holds(), "{op} failed randomized monotonicity");
            let grid = probe_monotone_grid(op);
            assert!(grid.law_holds(), "{op} failed grid monotonicity");
            assert_eq!(grid.samples_tested, 11 * 11 * 11);
        }
    }

    #[test]
    fn fixture_breaks_monotonicity_and_its_counterexamples_replay() {
        let report = probe_monotone(&NonMonotoneOp, 10_000, crate::DEFAULT_SEED);
        assert!(!report.law_holds());
        assert!(!report.counterexamples.is_empty());
        for violation in &report.counterexamples {
            assert!(violation.replays(&NonMonotoneOp));
            assert!(!violation.replays(&GammaOperator::linear()));
        }
        assert!(!probe_monotone_grid(&NonMonotoneOp).law_holds());
    }

    #[test]
    fn monotone_families_distribute_over_min() {
        let ops = [
            GammaOperator::linear(),
            GammaOperator::weighted([1.0, 2.0, 3.0]).unwrap(),
            GammaOperator::weighted([0.0, 1.0, 1.0]).unwrap(),
            GammaOperator::risk_amp(0.5).unwrap(),
        ];
        for op in &ops {
            assert!(probe_distributive(op, 10_000, crate::DEFAULT_SEED).law_holds());
            assert!(probe_distributive_grid(op).law_holds());
        }
    }

    #[test]
    fn fixture_breaks_distributivity() {
        let report = probe_distributive(&NonMonotoneOp, 10_000, crate::DEFAULT_SEED);
        assert!(!report.law_holds());
        for violation in report.counterexamples.iter().take(8) {
            assert!(violation.replays(&NonMonotoneOp));
        }
    }

    #[test]
    fn linear_is_associative_everywhere_probed() {
        let op = GammaOperator::linear();
        assert!(probe_associative(&op, 10_000, crate::DEFAULT_SEED).law_holds());
        let grid = probe_associative_grid(&op);
        assert!(grid.law_holds());
        assert_eq!(grid.samples_tested, 11u64.pow(5));
    }

    #[test]
    fn weighted_grid_sweep_pins_the_smallest_counterexamples() {
        let op = GammaOperator::weighted([1.0, 2.0, 3.0]).unwrap();
        let report = probe_associative_grid(&op);
        assert!(!report.law_holds());

        // (0,0,1,0,0): outer-left nesting gives 1·3 = 3, middle gives 2² = 4.
        let target = [0.0, 0.0, 1.0, 0.0, 0.0].map(Value::new);
        let hit = report
            .counterexamples
            .iter()
            .find_map(|v| match v {
                LawViolation::Associative {
                    args, lhs, rhs, ..
                } if *args == target => Some((*lhs, *rhs)),
                _ => None,
            })
            .expect("grid sweep must record the (0,0,1,0,0) counterexample");
        assert_eq!(hit, (Value::new(3.0), Value::new(4.0)));

        for violation in report.counterexamples.iter().take(8) {
            assert!(violation.replays(&op));
        }
    }

    #[test]
    fn risk_amp_has_associativity_counterexamples() {
        let op = GammaOperator::risk_amp(0.5).unwrap();
        let report = probe_associative(&op, 10_000, crate::DEFAULT_SEED);
        assert!(!report.law_holds());
        for violation in report.counterexamples.iter().take(8) {
            assert!(violation.replays(&op));
        }
    }

    #[test]
    fn reports_stay_capped_but_keep_counting() {
        let op = GammaOperator::weighted([1.0, 2.0, 3.0]).unwrap();
        let report = probe_associative_grid(&op);
        assert_eq!(report.counterexamples.len(), MAX_RECORDED_VIOLATIONS);
        assert!(report.violations > MAX_RECORDED_VIOLATIONS as u64);
    }
}
