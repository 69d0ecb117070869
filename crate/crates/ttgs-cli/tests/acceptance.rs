//! Acceptance gate: eight checks covering the solver against its oracles,
//! the algebra probes, the accounting, cycle detection, and the CLI.
//!
//! Every check prints one `acceptance Cn …: PASS` or `FAIL` line (visible
//! under `--nocapture`; the test name carries the same verdict in normal
//! runs) and pins its tolerances and instance parameters in code.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ttgs_core::algebra::{
    probe_associative, probe_associative_grid, probe_distributive, LawViolation,
};
use ttgs_core::{
    bellman_ford_baseline, enumerate_optimal, path_cost_nested, relax_step_synchronous,
    solve, verify_bounds, EvalMap, GammaOperator, Network, Schedule, SolveReport, Value,
};

/// Absolute tolerance for every label comparison in this gate.
const TOLERANCE: f64 = 1e-9;

/// Oracle walk budget for the small-instance soundness sweep.
const WALK_BUDGET: usize = 8;

fn conclude(criterion: &str, started: Instant, failures: Vec<String>) {
    let elapsed = started.elapsed().as_secs_f64();
    if failures.is_empty() {
        println!("acceptance {criterion}: PASS ({elapsed:.2}s)");
    } else {
        println!("acceptance {criterion}: FAIL ({elapsed:.2}s)");
        for failure in &failures {
            println!("  {failure}");
        }
        panic!(
            "{criterion} failed with {} problem(s); first: {}",
            failures.len(),
            failures[0]
        );
    }
}

fn eval_sum() -> EvalMap {
    EvalMap::weighted_sum([1.0, 1.0, 1.0]).unwrap()
}

fn families() -> [GammaOperator; 3] {
    [
        GammaOperator::linear(),
        GammaOperator::weighted([1.0, 2.0, 3.0]).unwrap(),
        GammaOperator::risk_amp(0.5).unwrap(),
    ]
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn load_fixture(name: &str, allow_negative: bool) -> Network {
    let text = std::fs::read_to_string(fixture(name)).expect("fixture present");
    Network::parse(&text, allow_negative).expect("fixture parses")
}

/// 200 digraphs, n ≤ 50, edge probability 0.2, integer triples in [0, 100],
/// scalarized with sum:1,1,1. Seeded by case index.
fn binary_reduction_instances() -> Vec<Network> {
    let eval = eval_sum();
    (0..200)
        .map(|case| {
            let mut rng = ChaCha8Rng::seed_from_u64(case);
            let n = rng.gen_range(2..=50);
            let mut edges = Vec::new();
            for from in 0..n {
                for to in 0..n {
                    if from != to && rng.gen_bool(0.2) {
                        let c = rng.gen_range(0..=100) as f64;
                        let t = rng.gen_range(0..=100) as f64;
                        let r = rng.gen_range(0..=100) as f64;
                        edges.push((from, to, ttgs_core::EdgeTriple::new(c, t, r).unwrap()));
                    }
                }
            }
            Network::new(n, 0, edges, false).unwrap().scalarize(&eval)
        })
        .collect()
}

/// 100 out-trees, n ≤ 100, nonnegative weights. Returns each scalarized
/// tree with its child → (parent, scalar weight) map.
fn out_tree_instances() -> Vec<(Network, Vec<Option<(usize, Value)>>)> {
    let eval = eval_sum();
    (0..100)
        .map(|case| {
            let mut rng = ChaCha8Rng::seed_from_u64(case);
            let n = rng.gen_range(2..=100);
            let mut edges = Vec::new();
            let mut parents: Vec<Option<(usize, Value)>> = vec![None; n];
            for child in 1..n {
                let parent = rng.gen_range(0..child);
                let c = rng.gen_range(0.0..100.0);
                let t = rng.gen_range(0.0..100.0);
                let r = rng.gen_range(0.0..100.0);
                parents[child] = Some((parent, eval.evaluate(c, t, r)));
                edges.push((parent, child, ttgs_core::EdgeTriple::new(c, t, r).unwrap()));
            }
            let net = Network::new(n, 0, edges, false).unwrap().scalarize(&eval);
            (net, parents)
        })
        .collect()
}

/// 300 digraphs, n ≤ 8, nonnegative weights, cycling through the three
/// operator families. Edge probability is drawn per instance.
fn small_digraph_instances() -> Vec<(Network, GammaOperator)> {
    let eval = eval_sum();
    let families = families();
    (0..300)
        .map(|case| {
            let mut rng = ChaCha8Rng::seed_from_u64(case);
            let n = rng.gen_range(2..=8);
            let p = rng.gen_range(0.1..0.8);
            let mut edges = Vec::new();
            for from in 0..n {
                for to in 0..n {
                    if from != to && rng.gen_bool(p) {
                        let c = rng.gen_range(0.0..100.0);
                        let t = rng.gen_range(0.0..100.0);
                        let r = rng.gen_range(0.0..100.0);
                        edges.push((from, to, ttgs_core::EdgeTriple::new(c, t, r).unwrap()));
                    }
                }
            }
            let net = Network::new(n, 0, edges, false).unwrap().scalarize(&eval);
            (net, families[case as usize % 3].clone())
        })
        .collect()
}

#[test]
fn c1_binary_reduction_matches_the_classical_baseline() {
    let started = Instant::now();
    let op = GammaOperator::weighted([0.0, 1.0, 1.0]).unwrap();
    let mut failures = Vec::new();
    for (case, net) in binary_reduction_instances().iter().enumerate() {
        let report = solve(net, &op, Schedule::Synchronous, None, false).unwrap();
        let baseline = bellman_ford_baseline(net).unwrap();
        if baseline.negative_cycle {
            failures.push(format!("case {case}: baseline flagged a negative cycle"));
            continue;
        }
        for (vertex, (&label, &classical)) in report
            .final_labels
            .labels
            .iter()
            .zip(&baseline.distances)
            .enumerate()
        {
            if !label.approx_eq(classical, TOLERANCE) {
                failures.push(format!(
                    "case {case} vertex {vertex}: label {label} vs classical {classical}"
                ));
            }
        }
    }
    conclude("C1 binary-reduction-equivalence", started, failures);
}

#[test]
fn c2_out_tree_labels_are_exact() {
    let started = Instant::now();
    let mut failures = Vec::new();
    for (case, (net, parents)) in out_tree_instances().iter().enumerate() {
        for op in &families() {
            let report = solve(net, op, Schedule::Synchronous, None, false).unwrap();
            if report.converged_at.is_none() {
                failures.push(format!("case {case} {op}: tree solve did not converge"));
                continue;
            }
            for vertex in 0..net.n() {
                let mut weights = Vec::new();
                let mut at = vertex;
                while let Some((parent, weight)) = parents[at] {
                    weights.push(weight);
                    at = parent;
                }
                weights.reverse();
                let expected = path_cost_nested(op, &weights);
                let label = report.final_labels.labels[vertex];
                if !label.approx_eq(expected, TOLERANCE) {
                    failures.push(format!(
                        "case {case} {op} vertex {vertex}: label {label} vs path cost {expected}"
                    ));
                }
            }
        }
    }
    conclude("C2 out-tree-exactness", started, failures);
}

#[test]
fn c3_c4_lower_bound_soundness_and_monotone_convergence() {
    let started = Instant::now();
    let mut c3_failures = Vec::new();
    let mut c4_failures = Vec::new();

    for (case, (net, op)) in small_digraph_instances().iter().enumerate() {
        let report = match solve(net, op, Schedule::Synchronous, None, true) {
            Ok(report) => report,
            Err(error) => {
                c3_failures.push(format!("case {case} {op}: solve failed: {error}"));
                continue;
            }
        };

        // Labels never exceed the enumerated optimum over walks of at most
        // WALK_BUDGET edges.
        match enumerate_optimal(net, op, WALK_BUDGET)
            .and_then(|table| verify_bounds(&report, &table))
        {
            Ok(check) => {
                if !check.lower_bound_holds() {
                    for &vertex in &check.violations {
                        let row = &check.rows[vertex];
                        c3_failures.push(format!(
                            "case {case} {op} vertex {vertex}: label {} above oracle {}",
                            row.label, row.oracle
                        ));
                    }
                }
            }
            Err(error) => c3_failures.push(format!("case {case} {op}: oracle failed: {error}")),
        }

        check_monotone_fixpoint(&format!("case {case} {op}"), net, op, &report, &mut c4_failures);
    }

    // The fixed mixing fixture: label 5 against enumerated optimum 10,
    // exactly.
    let mixing = load_fixture("mixing.ttgn", false).scalarize(&eval_sum());
    let linear = GammaOperator::linear();
    let report = solve(&mixing, &linear, Schedule::Synchronous, None, true).unwrap();
    let label = report.final_labels.labels[4];
    let table = enumerate_optimal(&mixing, &linear, WALK_BUDGET).unwrap();
    let oracle = table.best[4];
    if label != Value::new(5.0) || oracle != Value::new(10.0) {
        c3_failures.push(format!(
            "mixing fixture: expected label 5 vs oracle 10, got {label} vs {oracle}"
        ));
    }
    check_monotone_fixpoint("mixing fixture", &mixing, &linear, &report, &mut c4_failures);

    conclude("C3 lower-bound-soundness", started, c3_failures);
    conclude("C4 monotone-convergence-and-fixpoint", started, c4_failures);
}

/// The criterion-4 predicate for one traced synchronous run: labels never
/// increase across iterations, and runs without an improving cycle are
/// stable under one extra sweep with `converged_at ≤ n − 1`.
fn check_monotone_fixpoint(
    context: &str,
    net: &Network,
    op: &GammaOperator,
    report: &SolveReport,
    failures: &mut Vec<String>,
) {
    let history = report
        .per_iteration_labels
        .as_ref()
        .expect("trace was requested");
    for step in 1..history.len() {
        for vertex in 0..net.n() {
            if history[step].labels[vertex] > history[step - 1].labels[vertex] {
                failures.push(format!(
                    "{context}: label of vertex {vertex} rose at iteration {step}"
                ));
            }
        }
    }
    if !report.improving_cycle {
        let (next, _) = relax_step_synchronous(&report.final_labels, net, op);
        if next.labels != report.final_labels.labels {
            failures.push(format!("{context}: labels moved on an extra sweep"));
        }
        match report.converged_at {
            Some(at) if at <= net.n() - 1 => {}
            other => failures.push(format!(
                "{context}: converged_at {other:?} outside 0..={}",
                net.n() - 1
            )),
        }
    }
}

#[test]
fn c5_algebraic_law_probes() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let samples = 10_000;
    let seed = ttgs_core::DEFAULT_SEED;

    for op in &families() {
        let report = probe_distributive(op, samples, seed);
        if report.violations != 0 {
            failures.push(format!(
                "{op}: {} distributivity violations in {samples} samples",
                report.violations
            ));
        }
    }

    let linear = probe_associative(&GammaOperator::linear(), samples, seed);
    if linear.violations != 0 {
        failures.push(format!(
            "linear: {} associativity violations in {samples} samples",
            linear.violations
        ));
    }

    let weighted = GammaOperator::weighted([1.0, 2.0, 3.0]).unwrap();
    let grid = probe_associative_grid(&weighted);
    let target = [0.0, 0.0, 1.0, 0.0, 0.0].map(Value::new);
    let found = grid.counterexamples.iter().any(|violation| {
        matches!(
            violation,
            LawViolation::Associative { args, lhs, rhs, .. }
                if *args == target
                    && (lhs.get().min(rhs.get()), lhs.get().max(rhs.get())) == (3.0, 4.0)
        )
    });
    if !found {
        failures.push(
            "weighted:1,2,3 grid probe did not report the (0,0,1,0,0) \
             counterexample with values 3 vs 4"
                .to_string(),
        );
    }

    conclude("C5 algebraic-law-probes", started, failures);
}

#[test]
fn c6_relaxation_accounting() {
    let started = Instant::now();
    let mut failures = Vec::new();

    // The default bench sweep, recomputed through the library.
    let eval = eval_sum();
    let linear = GammaOperator::linear();
    for &n in &[10usize, 20, 50] {
        for &p in &[0.05f64, 0.1] {
            let net = Network::generate_random(n, p, [(0.0, 100.0); 3], 0)
                .unwrap()
                .scalarize(&eval);
            let mut expected = 0u64;
            for edge in net.edges() {
                expected += net.predecessors(edge.from).unwrap().len() as u64;
            }
            let report = solve(&net, &linear, Schedule::Synchronous, None, false).unwrap();
            for (iteration, &count) in report.relaxations_per_iteration.iter().enumerate() {
                if count != expected {
                    failures.push(format!(
                        "n={n} p={p} iteration {iteration}: {count} relaxations, \
                         predecessor sum {expected}"
                    ));
                }
            }
            let m = net.edge_count() as u64;
            let bound = (n as u64 - 1) * n as u64 * m;
            if report.relaxations_total > bound {
                failures.push(format!(
                    "n={n} p={p}: total {} exceeds bound {bound}",
                    report.relaxations_total
                ));
            }
        }
    }

    // The bench command audits the same sweep itself.
    let output = ttgs(&["bench"]);
    if exit_code(&output) != 0 {
        failures.push(format!("bench exited {}", exit_code(&output)));
    }
    let report = String::from_utf8_lossy(&output.stdout).to_string();
    for needle in ["\"accounting_exact\": true", "\"within_bound\": true"] {
        if !report.contains(needle) {
            failures.push(format!("bench report lacks {needle}"));
        }
    }

    conclude("C6 relaxation-accounting", started, failures);
}

#[test]
fn c7_improving_cycle_detection() {
    let started = Instant::now();
    let mut failures = Vec::new();

    let cycle = load_fixture("cycle_neg.ttgn", true).scalarize(&eval_sum());
    let report = solve(
        &cycle,
        &GammaOperator::linear(),
        Schedule::Synchronous,
        None,
        false,
    )
    .unwrap();
    if !report.improving_cycle {
        failures.push("the negative two-cycle was not flagged".to_string());
    }
    if report.converged_at.is_some() {
        failures.push("a flagged run must not claim convergence".to_string());
    }

    // No nonnegative instance from the oracle sweeps may be flagged.
    let binary_op = GammaOperator::weighted([0.0, 1.0, 1.0]).unwrap();
    for (case, net) in binary_reduction_instances().iter().enumerate() {
        let report = solve(net, &binary_op, Schedule::Synchronous, None, false).unwrap();
        if report.improving_cycle {
            failures.push(format!("binary-reduction case {case} was flagged"));
        }
    }
    for (case, (net, _)) in out_tree_instances().iter().enumerate() {
        for op in &families() {
            let report = solve(net, op, Schedule::Synchronous, None, false).unwrap();
            if report.improving_cycle {
                failures.push(format!("out-tree case {case} {op} was flagged"));
            }
        }
    }
    for (case, (net, op)) in small_digraph_instances().iter().enumerate() {
        let report = solve(net, op, Schedule::Synchronous, None, false).unwrap();
        if report.improving_cycle {
            failures.push(format!("small-digraph case {case} {op} was flagged"));
        }
    }

    conclude("C7 improving-cycle-detection", started, failures);
}

fn ttgs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ttgs"))
        .args(args)
        .output()
        .expect("the binary should run")
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("no signal expected")
}

#[test]
fn c8_cli_stability_and_exit_codes() {
    let started = Instant::now();
    let mut failures = Vec::new();

    let diamond = fixture("diamond.ttgn");
    let diamond = diamond.to_str().unwrap();
    let args = [
        "solve",
        "--input",
        diamond,
        "--gamma",
        "linear",
        "--eval",
        "sum:1,0,0",
        "--schedule",
        "synchronous",
    ];
    let first = ttgs(&args);
    let second = ttgs(&args);
    if first.stdout != second.stdout {
        failures.push("two identical solve runs differed".to_string());
    }
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/diamond_solve.json");
    let golden = std::fs::read(golden).expect("golden file present");
    if first.stdout != golden {
        failures.push("solve output does not match the checked-in golden file".to_string());
    }

    let mixing = fixture("mixing.ttgn");
    let expectations: [(&[&str], i32); 4] = [
        (&args, 0),
        (&["solve", "--input", "no_such_file.ttgn"], 1),
        (
            &[
                "solve",
                "--input",
                diamond,
                "--gamma",
                "weighted:0,0,0",
            ],
            1,
        ),
        (
            &[
                "verify",
                "--input",
                mixing.to_str().unwrap(),
                "--strict-lemma",
            ],
            3,
        ),
    ];
    for (invocation, expected) in expectations {
        let output = ttgs(invocation);
        let got = exit_code(&output);
        if got != expected {
            failures.push(format!("{invocation:?} exited {got}, expected {expected}"));
        }
    }
    let cycle = ttgs(&[
        "solve",
        "--input",
        fixture("cycle_neg.ttgn").to_str().unwrap(),
        "--allow-negative",
        "--fail-on-cycle",
    ]);
    if exit_code(&cycle) != 2 {
        failures.push(format!(
            "the cycle fixture exited {}, expected 2",
            exit_code(&cycle)
        ));
    }

    conclude("C8 cli-stability-and-exit-codes", started, failures);
}
