//! One function per subcommand, each returning the process exit code.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::Path;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use ttgs_core::algebra::{
    probe_associative, probe_associative_grid, probe_distributive, probe_distributive_grid,
    probe_monotone, probe_monotone_grid, LawViolation, ProbeLaw, ProbeReport,
};
use ttgs_core::{
    enumerate_optimal, solve as run_solve, verify_bounds, BoundsCheck, EvalMap, GammaOperator,
    Network, Predecessor, Schedule, SolveReport, Witness,
};

use crate::json;
use crate::{BenchArgs, CommonArgs, GenArgs, ProbeArgs, VerifyArgs};

const EXIT_OK: u8 = 0;
const EXIT_CYCLE: u8 = 2;
const EXIT_VERIFY: u8 = 3;

/// Largest vertex count `verify` enumerates without `--force`.
const VERIFY_MAX_N: usize = 8;
/// Largest walk budget `verify` accepts without `--force`.
const VERIFY_MAX_BUDGET: usize = 8;

struct Configured {
    net: Network,
    gamma: GammaOperator,
    eval: EvalMap,
    schedule: Schedule,
}

fn configure(args: &CommonArgs) -> Result<Configured> {
    let gamma: GammaOperator = args.gamma.parse()?;
    let eval: EvalMap = args.eval.parse()?;
    let schedule: Schedule = args.schedule.parse().map_err(|e: String| anyhow!(e))?;
    let path = args
        .input
        .as_ref()
        .ok_or_else(|| anyhow!("--input is required for this command"))?;
    let text =
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let net = Network::parse(&text, args.allow_negative)
        .with_context(|| format!("parsing {}", path.display()))?;
    Ok(Configured {
        net,
        gamma,
        eval,
        schedule,
    })
}

/// Writes the report to `--output` (atomically, via a sibling temp file)
/// or stdout.
fn emit(output: Option<&Path>, body: &str) -> Result<()> {
    let Some(path) = output else {
        print!("{body}");
        return Ok(());
    };
    let dir = match path.parent() {
        Some(parent) if !parent.as_os_str().is_empty() => parent,
        _ => Path::new("."),
    };
    let mut file = tempfile::NamedTempFile::new_in(dir)
        .with_context(|| format!("creating a temporary file in {}", dir.display()))?;
    file.write_all(body.as_bytes())?;
    file.persist(path)
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

pub fn solve(args: &CommonArgs) -> Result<u8> {
    let cfg = configure(args)?;
    let scalar = cfg.net.scalarize(&cfg.eval);
    let report = run_solve(&scalar, &cfg.gamma, cfg.schedule, args.max_iters, args.trace)?;
    emit(
        args.output.as_deref(),
        &solve_json(&scalar, &cfg.eval, &report),
    )?;
    if report.improving_cycle && args.fail_on_cycle {
        return Ok(EXIT_CYCLE);
    }
    Ok(EXIT_OK)
}

fn solve_json(net: &Network, eval: &EvalMap, report: &SolveReport) -> String {
    let distances = json::labels(&report.final_labels.labels);
    let witnesses: Vec<String> = report
        .final_labels
        .witnesses
        .iter()
        .map(|&w| witness_json(net, w))
        .collect();

    let mut out = String::new();
    writeln!(out, "{{").unwrap();
    writeln!(out, "  \"format_version\": 1,").unwrap();
    writeln!(out, "  \"n\": {},", net.n()).unwrap();
    writeln!(out, "  \"m\": {},", net.edge_count()).unwrap();
    writeln!(out, "  \"source\": {},", net.source()).unwrap();
    writeln!(out, "  \"gamma\": {},", json::string(&report.gamma.spec())).unwrap();
    writeln!(out, "  \"eval\": {},", json::string(&eval.spec())).unwrap();
    writeln!(
        out,
        "  \"schedule\": {},",
        json::string(&report.schedule.to_string())
    )
    .unwrap();
    writeln!(out, "  \"iterations_run\": {},", report.iterations_run).unwrap();
    writeln!(
        out,
        "  \"converged_at\": {},",
        json::opt_index(report.converged_at)
    )
    .unwrap();
    writeln!(out, "  \"improving_cycle\": {},", report.improving_cycle).unwrap();
    writeln!(out, "  \"relaxations_total\": {},", report.relaxations_total).unwrap();
    writeln!(
        out,
        "  \"relaxations_per_iteration\": {},",
        json::counts(&report.relaxations_per_iteration)
    )
    .unwrap();
    writeln!(out, "  \"distances\": {distances},").unwrap();
    let trace = report.per_iteration_labels.as_ref();
    let comma = if trace.is_some() { "," } else { "" };
    writeln!(out, "  \"witnesses\": [{}]{comma}", witnesses.join(", ")).unwrap();
    if let Some(history) = trace {
        writeln!(out, "  \"trace\": [").unwrap();
        for (index, state) in history.iter().enumerate() {
            let comma = if index + 1 < history.len() { "," } else { "" };
            writeln!(out, "    {}{comma}", json::labels(&state.labels)).unwrap();
        }
        writeln!(out, "  ]").unwrap();
    }
    writeln!(out, "}}").unwrap();
    out
}

fn witness_json(net: &Network, witness: Option<Witness>) -> String {
    match witness {
        None => "null".to_string(),
        Some(Witness::Origin) => "\"origin\"".to_string(),
        Some(Witness::Fragment { pred, edge }) => {
            let p = match pred {
                Predecessor::Virtual => "\"virtual\"".to_string(),
                Predecessor::Vertex(vertex) => vertex.to_string(),
            };
            format!("{{\"p\": {p}, \"u\": {}}}", net.edges()[edge].from)
        }
    }
}

pub fn verify(args: &VerifyArgs) -> Result<u8> {
    let common = &args.common;
    let cfg = configure(common)?;
    if cfg.schedule != Schedule::Synchronous {
        bail!("verify compares against the synchronous schedule only");
    }
    if !common.force {
        if cfg.net.n() > VERIFY_MAX_N {
            bail!(
                "verify enumerates every walk and is capped at n = {VERIFY_MAX_N} \
                 (got {}); pass --force to override",
                cfg.net.n()
            );
        }
        if args.budget > VERIFY_MAX_BUDGET {
            bail!(
                "walk budget {} exceeds the cap of {VERIFY_MAX_BUDGET}; \
                 pass --force to override",
                args.budget
            );
        }
    }
    let scalar = cfg.net.scalarize(&cfg.eval);
    // Enough sweeps that the labels dominate every walk the oracle scores.
    let cap = common
        .max_iters
        .unwrap_or_else(|| scalar.n().saturating_sub(1).max(args.budget));
    let report = run_solve(&scalar, &cfg.gamma, Schedule::Synchronous, Some(cap), false)?;
    let table = enumerate_optimal(&scalar, &cfg.gamma, args.budget)?;
    let check = verify_bounds(&report, &table)?;
    emit(
        common.output.as_deref(),
        &verify_json(&scalar, &cfg.eval, args.budget, common.strict_lemma, &report, &check),
    )?;
    if !check.lower_bound_holds() {
        return Ok(EXIT_VERIFY);
    }
    if common.strict_lemma && check.equal_count < check.rows.len() {
        return Ok(EXIT_VERIFY);
    }
    if report.improving_cycle && common.fail_on_cycle {
        return Ok(EXIT_CYCLE);
    }
    Ok(EXIT_OK)
}

fn verify_json(
    net: &Network,
    eval: &EvalMap,
    budget: usize,
    strict_lemma: bool,
    report: &SolveReport,
    check: &BoundsCheck,
) -> String {
    let mut out = String::new();
    writeln!(out, "{{").unwrap();
    writeln!(out, "  \"format_version\": 1,").unwrap();
    writeln!(out, "  \"n\": {},", net.n()).unwrap();
    writeln!(out, "  \"m\": {},", net.edge_count()).unwrap();
    writeln!(out, "  \"source\": {},", net.source()).unwrap();
    writeln!(out, "  \"gamma\": {},", json::string(&report.gamma.spec())).unwrap();
    writeln!(out, "  \"eval\": {},", json::string(&eval.spec())).unwrap();
    writeln!(out, "  \"schedule\": \"synchronous\",").unwrap();
    writeln!(out, "  \"edge_budget\": {budget},").unwrap();
    writeln!(out, "  \"strict_lemma\": {strict_lemma},").unwrap();
    writeln!(out, "  \"iterations_run\": {},", report.iterations_run).unwrap();
    writeln!(
        out,
        "  \"converged_at\": {},",
        json::opt_index(report.converged_at)
    )
    .unwrap();
    writeln!(out, "  \"improving_cycle\": {},", report.improving_cycle).unwrap();
    writeln!(out, "  \"vertices\": [").unwrap();
    for (index, row) in check.rows.iter().enumerate() {
        let comma = if index + 1 < check.rows.len() { "," } else { "" };
        writeln!(
            out,
            "    {{\"vertex\": {}, \"label\": {}, \"oracle\": {}, \
             \"equal\": {}, \"strict\": {}}}{comma}",
            row.vertex,
            json::label(row.label),
            json::label(row.oracle),
            row.equal,
            row.strict
        )
        .unwrap();
    }
    writeln!(out, "  ],").unwrap();
    writeln!(out, "  \"equal_count\": {},", check.equal_count).unwrap();
    writeln!(out, "  \"strict_count\": {},", check.strict_count).unwrap();
    writeln!(out, "  \"violations\": {},", json::indices(&check.violations)).unwrap();
    writeln!(
        out,
        "  \"lower_bound_holds\": {}",
        check.lower_bound_holds()
    )
    .unwrap();
    writeln!(out, "}}").unwrap();
    out
}

pub fn probe(args: &ProbeArgs) -> Result<u8> {
    let gamma: GammaOperator = args.common.gamma.parse()?;
    let laws: Vec<ProbeLaw> = match args.law.as_str() {
        "all" => vec![
            ProbeLaw::Monotonicity,
            ProbeLaw::Distributivity,
            ProbeLaw::Associativity,
        ],
        "monotonicity" => vec![ProbeLaw::Monotonicity],
        "distributivity" => vec![ProbeLaw::Distributivity],
        "associativity" => vec![ProbeLaw::Associativity],
        other => bail!(
            "unknown law `{other}` (expected monotonicity, distributivity, \
             associativity or all)"
        ),
    };
    let seed = args.common.seed;
    let reports: Vec<ProbeReport> = laws
        .into_iter()
        .map(|law| match (law, args.grid) {
            (ProbeLaw::Monotonicity, false) => probe_monotone(&gamma, args.samples, seed),
            (ProbeLaw::Monotonicity, true) => probe_monotone_grid(&gamma),
            (ProbeLaw::Distributivity, false) => probe_distributive(&gamma, args.samples, seed),
            (ProbeLaw::Distributivity, true) => probe_distributive_grid(&gamma),
            (ProbeLaw::Associativity, false) => probe_associative(&gamma, args.samples, seed),
            (ProbeLaw::Associativity, true) => probe_associative_grid(&gamma),
        })
        .collect();
    emit(
        args.common.output.as_deref(),
        &probe_json(args, &gamma, &reports),
    )?;
    Ok(EXIT_OK)
}

fn probe_json(args: &ProbeArgs, gamma: &GammaOperator, reports: &[ProbeReport]) -> String {
    let mode = if args.grid { "grid" } else { "sampled" };
    let mut out = String::new();
    writeln!(out, "{{").unwrap();
    writeln!(out, "  \"format_version\": 1,").unwrap();
    writeln!(out, "  \"gamma\": {},", json::string(&gamma.spec())).unwrap();
    writeln!(out, "  \"mode\": \"{mode}\",").unwrap();
    writeln!(out, "  \"samples\": {},", args.samples).unwrap();
    writeln!(out, "  \"seed\": {},", args.common.seed).unwrap();
    writeln!(out, "  \"reports\": [").unwrap();
    for (index, report) in reports.iter().enumerate() {
        let comma = if index + 1 < reports.len() { "," } else { "" };
        writeln!(out, "    {{").unwrap();
        writeln!(out, "      \"law\": \"{}\",", report.law.name()).unwrap();
        writeln!(out, "      \"samples_tested\": {},", report.samples_tested).unwrap();
        writeln!(out, "      \"violations\": {},", report.violations).unwrap();
        writeln!(out, "      \"law_holds\": {},", report.law_holds()).unwrap();
        if report.counterexamples.is_empty() {
            writeln!(out, "      \"counterexamples\": []").unwrap();
        } else {
            writeln!(out, "      \"counterexamples\": [").unwrap();
            for (ci, violation) in report.counterexamples.iter().enumerate() {
                let comma = if ci + 1 < report.counterexamples.len() {
                    ","
                } else {
                    ""
                };
                writeln!(out, "        {}{comma}", violation_json(violation)).unwrap();
            }
            writeln!(out, "      ]").unwrap();
        }
        writeln!(out, "    }}{comma}").unwrap();
    }
    writeln!(out, "  ]").unwrap();
    writeln!(out, "}}").unwrap();
    out
}

fn violation_json(violation: &LawViolation) -> String {
    match violation {
        LawViolation::Monotone {
            args,
            position,
            delta,
            before,
            after,
        } => format!(
            "{{\"kind\": \"monotone\", \"args\": {}, \"position\": {position}, \
             \"delta\": {}, \"before\": {}, \"after\": {}}}",
            json::labels(args),
            json::float(*delta),
            json::label(*before),
            json::label(*after)
        ),
        LawViolation::Distributive {
            a,
            b,
            rest,
            position,
            lhs,
            rhs,
        } => format!(
            "{{\"kind\": \"distributive\", \"a\": {}, \"b\": {}, \"rest\": {}, \
             \"position\": {position}, \"lhs\": {}, \"rhs\": {}}}",
            json::label(*a),
            json::label(*b),
            json::labels(rest),
            json::label(*lhs),
            json::label(*rhs)
        ),
        LawViolation::Associative {
            args,
            lhs_nesting,
            rhs_nesting,
            lhs,
            rhs,
        } => format!(
            "{{\"kind\": \"associative\", \"args\": {}, \"lhs_nesting\": {lhs_nesting}, \
             \"rhs_nesting\": {rhs_nesting}, \"lhs\": {}, \"rhs\": {}}}",
            json::labels(args),
            json::label(*lhs),
            json::label(*rhs)
        ),
    }
}

pub fn gen(args: &GenArgs) -> Result<u8> {
    let (lo, hi) = parse_range(&args.range)?;
    let net = Network::generate_random(args.n, args.p, [(lo, hi); 3], args.common.seed)?;
    emit(args.common.output.as_deref(), &net.serialize())?;
    Ok(EXIT_OK)
}

pub fn bench(args: &BenchArgs) -> Result<u8> {
    let common = &args.common;
    let gamma: GammaOperator = common.gamma.parse()?;
    let eval: EvalMap = common.eval.parse()?;
    let schedule: Schedule = common.schedule.parse().map_err(|e: String| anyhow!(e))?;
    let sizes = parse_list::<usize>(&args.sizes).context("parsing --sizes")?;
    let probs = parse_list::<f64>(&args.probs).context("parsing --probs")?;
    let (lo, hi) = parse_range(&args.range)?;
    if sizes.is_empty() || probs.is_empty() {
        bail!("the sweep needs at least one size and one probability");
    }

    struct Run {
        n: usize,
        m: usize,
        sum_preds: u64,
        reported: u64,
        iterations: usize,
        wall_time_ms: f64,
    }

    let mut runs = Vec::new();
    let mut accounting_exact = true;
    let mut within_bound = true;
    let mut any_cycle = false;
    for &n in &sizes {
        for &p in &probs {
            let net = Network::generate_random(n, p, [(lo, hi); 3], common.seed)?;
            let scalar = net.scalarize(&eval);
            let sum_preds = scalar.relaxations_per_sweep();
            let start = Instant::now();
            let report = run_solve(&scalar, &gamma, schedule, common.max_iters, false)?;
            let wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
            accounting_exact &= report
                .relaxations_per_iteration
                .iter()
                .all(|&count| count == sum_preds);
            let m = scalar.edge_count();
            let bound = (n as u64).saturating_sub(1) * (n as u64) * (m as u64);
            within_bound &= report.relaxations_total <= bound;
            any_cycle |= report.improving_cycle;
            runs.push(Run {
                n,
                m,
                sum_preds,
                reported: report
                    .relaxations_per_iteration
                    .first()
                    .copied()
                    .unwrap_or(0),
                iterations: report.iterations_run,
                wall_time_ms,
            });
        }
    }

    let mut out = String::new();
    writeln!(out, "{{").unwrap();
    writeln!(out, "  \"format_version\": 1,").unwrap();
    writeln!(out, "  \"gamma\": {},", json::string(&gamma.spec())).unwrap();
    writeln!(out, "  \"eval\": {},", json::string(&eval.spec())).unwrap();
    writeln!(out, "  \"schedule\": {},", json::string(&schedule.to_string())).unwrap();
    writeln!(out, "  \"seed\": {},", common.seed).unwrap();
    writeln!(out, "  \"sizes\": {},", json::indices(&sizes)).unwrap();
    writeln!(out, "  \"probs\": {},", json::floats(&probs)).unwrap();
    writeln!(out, "  \"range\": [{}, {}],", json::float(lo), json::float(hi)).unwrap();
    writeln!(out, "  \"runs\": [").unwrap();
    for (index, run) in runs.iter().enumerate() {
        let comma = if index + 1 < runs.len() { "," } else { "" };
        writeln!(
            out,
            "    {{\"n\": {}, \"m\": {}, \"sum_preds\": {}, \
             \"relaxations_per_iteration\": {}, \"iterations\": {}, \
             \"wall_time_ms\": {:.3}}}{comma}",
            run.n, run.m, run.sum_preds, run.reported, run.iterations, run.wall_time_ms
        )
        .unwrap();
    }
    writeln!(out, "  ],").unwrap();
    writeln!(out, "  \"accounting_exact\": {accounting_exact},").unwrap();
    writeln!(out, "  \"within_bound\": {within_bound}").unwrap();
    writeln!(out, "}}").unwrap();
    emit(common.output.as_deref(), &out)?;

    if !(accounting_exact && within_bound) {
        return Ok(EXIT_VERIFY);
    }
    if any_cycle && common.fail_on_cycle {
        return Ok(EXIT_CYCLE);
    }
    Ok(EXIT_OK)
}

fn parse_range(text: &str) -> Result<(f64, f64)> {
    let parts = parse_list::<f64>(text).context("parsing --range")?;
    let [lo, hi] = parts.as_slice() else {
        bail!("--range takes LO,HI (got `{text}`)");
    };
    Ok((*lo, *hi))
}

fn parse_list<T: std::str::FromStr>(text: &str) -> Result<Vec<T>>
where
    T::Err: std::error::Error + Send + Sync + 'static,
{
    text.split(',')
        .map(|item| {
            item.trim()
                .parse::<T>()
                .with_context(|| format!("bad list item `{item}`"))
        })
        .collect()
}
