//! `primebound`: sieve queries, bound checks over index ranges, grid
//! certification and the self test.
//!
//! Exit codes: 0 clean, 1 violations or counterexamples, 2 unresolved
//! points or cells, 3 usage or runtime errors.

mod config;
mod output;

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use primebound::bound_catalog::{self, export_json, lookup};
use primebound::formula_lib::{self, eval_at_point, eval_bivariate, eval_univariate, Arity, FnId, StepParam, Vars};
use primebound::grid_verifier::{self, tail_scan, GridReport, Manifest};
use primebound::numeric::rational;
use primebound::numeric::{Enclosure, Escalated340, Interval};
use primebound::range_verifier::{
    combined_exit_code, MiRow, PredicateId, RangeVerifier, Subject, ThresholdResult, VerificationReport,
};
use primebound::{selftest, Error, Result};
use serde_json::{json, Value};

use config::{parse_count, parse_range, Output, Precision, RunConfig};

#[derive(Parser)]
#[command(name = "primebound", version, about = "Explicit bounds for the n-th prime: checks and certificates")]
struct Cli {
    #[command(flatten)]
    cfg: RunConfig,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// The n-th prime.
    Nth {
        #[arg(value_parser = parse_count)]
        n: u64,
    },
    /// Number of primes up to x.
    Pi {
        #[arg(value_parser = parse_count)]
        x: u64,
    },
    /// Enclosure of theta(p_n), the sum of log p over the first n primes.
    Theta {
        #[arg(value_parser = parse_count)]
        n: u64,
    },
    /// Catalog of published bounds.
    #[command(subcommand)]
    Bound(BoundCmd),
    /// Point inequalities used inside the proofs.
    #[command(subcommand)]
    Predicate(PredicateCmd),
    /// Auxiliary functions of the proofs.
    #[command(subcommand)]
    Formula(FormulaCmd),
    /// Grid certification and tail scans.
    #[command(subcommand)]
    Grid(GridCmd),
    /// Tables re-derived from prime data.
    #[command(subcommand)]
    Report(ReportCmd),
    /// Identities, oracle comparisons, small thresholds and the r grid.
    Selftest,
}

#[derive(Subcommand)]
enum BoundCmd {
    List,
    /// Right-hand side at index n.
    Eval {
        id: String,
        #[arg(value_parser = parse_count)]
        n: u64,
    },
    /// Check every index in LO..HI.
    Check {
        id: String,
        #[arg(value_parser = parse_range)]
        range: (u64, u64),
    },
    /// Least index from which the bound holds up to the horizon.
    Threshold {
        id: String,
        #[arg(value_parser = parse_count)]
        horizon: u64,
    },
}

#[derive(Subcommand)]
enum PredicateCmd {
    List,
    Check {
        id: String,
        #[arg(value_parser = parse_range)]
        range: (u64, u64),
    },
    Threshold {
        id: String,
        #[arg(value_parser = parse_count)]
        horizon: u64,
    },
}

#[derive(Subcommand)]
enum FormulaCmd {
    List,
    /// Evaluate at x, at (x, t), or at an index n (point functions).
    Eval {
        id: String,
        args: Vec<String>,
        /// Step parameter of b0/b1: upper1, upper2, lower1, lower2, lower3 or a constant.
        #[arg(long)]
        step: Option<String>,
    },
}

#[derive(Subcommand)]
enum GridCmd {
    /// Certify `paper` (all six), `paper:ID`, or the grids of a manifest file.
    Run {
        target: String,
        #[arg(long, default_value_t = 8)]
        max_depth: u32,
    },
    /// Print the manifest of the published grids.
    Manifest,
    /// Check f >= 0 on [LO, HI] in cells of width --step (numeric evidence only).
    Tail {
        id: String,
        lo: String,
        hi: String,
        #[arg(long, default_value = "0.01")]
        step: String,
    },
}

#[derive(Subcommand)]
enum ReportCmd {
    /// Re-derive the B_i/M_i table up to the horizon.
    MiTable {
        #[arg(long, value_parser = parse_count, default_value_t = 1_000_000)]
        horizon: u64,
    },
}

/// What a command produced, in every output format.
struct Rendered {
    code: i32,
    human: String,
    json: Value,
    csv: String,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    let result = cli.cfg.validate().and_then(|_| run(&cli.cfg, &cli.cmd));
    match result {
        Ok(r) => {
            let text = match cli.cfg.output {
                Output::Human => r.human,
                Output::Json => output::json(&r.json),
                Output::Csv => r.csv,
            };
            let mut out = std::io::stdout().lock();
            // a closed pipe (`| head`) is not an error
            let _ = out.write_all(text.as_bytes());
            if !text.ends_with('\n') {
                let _ = out.write_all(b"\n");
            }
            ExitCode::from(r.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}

fn run(cfg: &RunConfig, cmd: &Cmd) -> Result<Rendered> {
    match cmd {
        Cmd::Nth { n } => {
            let p = cfg.engine()?.nth_prime(*n)?;
            Ok(Rendered { code: 0, human: p.to_string(), json: json!({ "n": n, "p": p }), csv: format!("n,p\n{n},{p}") })
        }
        Cmd::Pi { x } => {
            let c = cfg.engine()?.prime_count(*x)?;
            Ok(Rendered { code: 0, human: c.to_string(), json: json!({ "x": x, "pi": c }), csv: format!("x,pi\n{x},{c}") })
        }
        Cmd::Theta { n } => {
            if *n == 0 {
                return Err(Error::Argument("n must be at least 1".into()));
            }
            let pt = cfg.engine()?.stream_points(*n, *n)?.next().expect("one point");
            Ok(Rendered {
                code: 0,
                human: format!("theta(p_{n}) = {}\np_{n} = {}", output::real(pt.theta), pt.p),
                json: json!({ "n": n, "p": pt.p, "theta": pt.theta }),
                csv: format!("n,p,theta_lo,theta_hi\n{n},{},{},{}", pt.p, pt.theta.lo, pt.theta.hi),
            })
        }
        Cmd::Bound(b) => bound(cfg, b),
        Cmd::Predicate(p) => predicate(cfg, p),
        Cmd::Formula(f) => formula(cfg, f),
        Cmd::Grid(g) => grid(cfg, g),
        Cmd::Report(ReportCmd::MiTable { horizon }) => mi_table(cfg, *horizon),
        Cmd::Selftest => {
            let r = selftest::run(cfg.workers());
            let mut human = String::new();
            let mut csv = String::from("check,passed,detail\n");
            for c in &r.checks {
                let _ = writeln!(human, "{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
                let _ = writeln!(csv, "{},{},{}", output::csv_field(&c.name), c.passed, output::csv_field(&c.detail));
            }
            let _ = writeln!(human, "{} in {:.1} s", if r.passed() { "all passed" } else { "FAILED" }, r.wall_time_s);
            Ok(Rendered { code: r.exit_code(), human, json: serde_json::to_value(&r)?, csv })
        }
    }
}

fn check_subject(cfg: &RunConfig, id: &str, (lo, hi): (u64, u64)) -> Result<Rendered> {
    let s = Subject::parse(id)?;
    let engine = cfg.engine()?;
    let v = RangeVerifier::new(&engine, cfg.verify_options());
    let rep = if s.needs_theta() { v.verify_theta(id, lo, hi)? } else { v.verify_range(id, lo, hi)? };
    Ok(Rendered {
        code: combined_exit_code(std::slice::from_ref(&rep)),
        human: human_report(&rep),
        json: serde_json::to_value(&rep)?,
        csv: rep.to_csv(),
    })
}

fn human_report(r: &VerificationReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{} on n in [{}, {}]", r.subject, r.n_lo, r.n_hi);
    let _ = writeln!(
        s,
        "checked {}, violations {}, escalated {}, unresolved {}, vacuous {}",
        r.count_checked, r.violation_count, r.escalated_count, r.unresolved_count, r.vacuous_count
    );
    let opt = |v: Option<u64>| v.map_or("none".to_string(), |n| n.to_string());
    let _ = writeln!(s, "last violation: {}", opt(r.last_violation));
    for v in r.violations.iter().take(10) {
        let _ = writeln!(s, "  n = {}, p_n = {}, margin {}", v.n, v.p, output::real(v.margin));
    }
    if r.violations.len() > 10 {
        let _ = writeln!(s, "  ... {} more", r.violation_count - 10);
    }
    if let Some(m) = r.min_margin {
        let _ = writeln!(s, "smallest margin: {} at n = {}", output::real(m.margin), m.n);
    }
    if let Some(e) = &r.envelope {
        let _ = writeln!(s, "envelope |theta - p| < 0.15 p/log^3 p: {} failures of {}", e.failures, e.checked);
    }
    let _ = writeln!(s, "{:.2} s", r.wall_time_s);
    s
}

fn threshold(cfg: &RunConfig, id: &str, horizon: u64) -> Result<Rendered> {
    let engine = cfg.engine()?;
    let v = RangeVerifier::new(&engine, cfg.verify_options());
    let t: ThresholdResult = v.find_min_threshold(id, horizon)?;
    let claimed = Subject::parse(id)?.claimed_threshold();
    let code = if t.inconclusive { 2 } else { 0 };
    Ok(Rendered {
        code,
        human: t.threshold.to_string(),
        json: json!({
            "subject": t.subject,
            "horizon": t.horizon,
            "threshold": t.threshold,
            "claimed_threshold": claimed,
            "inconclusive": t.inconclusive,
            "report": t.report,
        }),
        csv: format!(
            "subject,horizon,threshold,claimed_threshold,inconclusive\n{},{},{},{},{}",
            t.subject,
            t.horizon,
            t.threshold,
            claimed.map(|c| c.to_string()).unwrap_or_default(),
            t.inconclusive
        ),
    })
}

fn bound(cfg: &RunConfig, cmd: &BoundCmd) -> Result<Rendered> {
    match cmd {
        BoundCmd::List => {
            let mut human = String::new();
            let mut csv = String::from("id,target,side,strict,claimed_threshold,conditional,provenance\n");
            for b in bound_catalog::registry() {
                let thr = b.claimed_threshold.map_or("none".to_string(), |t| t.to_string());
                let _ = writeln!(
                    human,
                    "{:<32} {:?} {:?} from n >= {}{}  ({})",
                    b.id,
                    b.target,
                    b.side,
                    thr,
                    if b.conditional { ", conditional" } else { "" },
                    b.provenance
                );
                let _ = writeln!(
                    csv,
                    "{},{:?},{:?},{},{},{},{}",
                    b.id,
                    b.target,
                    b.side,
                    b.strict,
                    b.claimed_threshold.map(|t| t.to_string()).unwrap_or_default(),
                    b.conditional,
                    output::csv_field(b.provenance)
                );
            }
            Ok(Rendered { code: 0, human, json: serde_json::from_str(&export_json())?, csv })
        }
        BoundCmd::Eval { id, n } => {
            let spec = lookup(id)?;
            let p = if spec.needs_prime() { cfg.engine()?.nth_prime(*n)? } else { 0 };
            let v: Interval = match cfg.precision {
                Precision::Standard => bound_catalog::eval_bound_at::<Interval>(spec, *n, p)?,
                Precision::Escalating => bound_catalog::eval_bound_at::<Escalated340>(spec, *n, p)?.to_interval(),
            };
            Ok(Rendered {
                code: 0,
                human: format!("{id} at n = {n}: {}", output::real(v)),
                json: json!({ "id": id, "n": n, "value": v }),
                csv: format!("id,n,value_lo,value_hi\n{id},{n},{},{}", v.lo, v.hi),
            })
        }
        BoundCmd::Check { id, range } => {
            lookup(id)?;
            check_subject(cfg, id, *range)
        }
        BoundCmd::Threshold { id, horizon } => {
            lookup(id)?;
            threshold(cfg, id, *horizon)
        }
    }
}

fn predicate_id(id: &str) -> Result<PredicateId> {
    PredicateId::parse(id).ok_or_else(|| Error::UnknownId(id.to_string()))
}

fn predicate(cfg: &RunConfig, cmd: &PredicateCmd) -> Result<Rendered> {
    match cmd {
        PredicateCmd::List => {
            let rows: Vec<Value> = PredicateId::all()
                .into_iter()
                .map(|p| json!({ "id": p.name(), "claimed_threshold": p.claimed_threshold(), "provenance": p.provenance() }))
                .collect();
            let mut human = String::new();
            let mut csv = String::from("id,claimed_threshold,provenance\n");
            for p in PredicateId::all() {
                let _ = writeln!(human, "{:<10} from n >= {:<12} ({})", p.name(), p.claimed_threshold(), p.provenance());
                let _ = writeln!(csv, "{},{},{}", p.name(), p.claimed_threshold(), output::csv_field(&p.provenance()));
            }
            Ok(Rendered { code: 0, human, json: Value::Array(rows), csv })
        }
        PredicateCmd::Check { id, range } => {
            predicate_id(id)?;
            check_subject(cfg, id, *range)
        }
        PredicateCmd::Threshold { id, horizon } => {
            predicate_id(id)?;
            threshold(cfg, id, *horizon)
        }
    }
}

fn step_param(s: Option<&str>) -> Result<Option<StepParam>> {
    Ok(match s {
        None => None,
        Some("upper1") => Some(StepParam::upper_step1()),
        Some("upper2") => Some(StepParam::upper_step2()),
        Some("lower1") => Some(StepParam::lower_step1()),
        Some("lower2") => Some(StepParam::lower_step2()),
        Some("lower3") => Some(StepParam::lower_step3()),
        Some(c) => Some(StepParam::constant(rational::parse(c)?)),
    })
}

fn eval_formula<T: Enclosure>(cfg: &RunConfig, id: FnId, args: &[String], step: Option<&StepParam>) -> Result<Interval> {
    let want = match id.arity() {
        Arity::Univariate => 1,
        Arity::Bivariate => 2,
        Arity::Point => 1,
    };
    if args.len() != want {
        return Err(Error::Argument(format!("{id} takes {want} argument(s)")));
    }
    let x = |s: &str| rational::parse(s).map(|q| rational::lift::<T>(&q));
    let v = match id.arity() {
        Arity::Univariate => eval_univariate(id, &x(&args[0])?)?,
        Arity::Bivariate => eval_bivariate(id, &x(&args[0])?, &x(&args[1])?)?,
        Arity::Point => {
            let n = parse_count(&args[0]).map_err(Error::Argument)?;
            let p = cfg.engine()?.nth_prime(n)?;
            eval_at_point(id, &Vars::<T>::compute(n, p)?, step)?
        }
    };
    Ok(v.to_interval())
}

fn formula(cfg: &RunConfig, cmd: &FormulaCmd) -> Result<Rendered> {
    match cmd {
        FormulaCmd::List => {
            let mut human = String::new();
            let mut csv = String::from("id,arity,domain,paper_ref\n");
            for f in formula_lib::registry() {
                let _ = writeln!(human, "{:<10} {:?} on {} ({})", f.id, f.arity, f.domain, f.paper_ref);
                let _ = writeln!(
                    csv,
                    "{},{:?},{},{}",
                    f.id,
                    f.arity,
                    output::csv_field(&f.domain),
                    output::csv_field(&f.paper_ref)
                );
            }
            Ok(Rendered { code: 0, human, json: serde_json::from_str(&formula_lib::registry_json())?, csv })
        }
        FormulaCmd::Eval { id, args, step } => {
            let f = FnId::parse(id)?;
            let step = step_param(step.as_deref())?;
            let v = match cfg.precision {
                Precision::Standard => eval_formula::<Interval>(cfg, f, args, step.as_ref())?,
                Precision::Escalating => eval_formula::<Escalated340>(cfg, f, args, step.as_ref())?,
            };
            Ok(Rendered {
                code: 0,
                human: format!("{id}({}) = {}", args.join(", "), output::real(v)),
                json: json!({ "id": id, "args": args, "value": v }),
                csv: format!("id,args,value_lo,value_hi\n{id},{},{},{}", args.join(" "), v.lo, v.hi),
            })
        }
    }
}

fn human_grid(r: &GridReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{} ({}, {}) on [{}, {}]", r.spec_id, r.fn_id, r.label, r.x_start, r.x_end);
    let _ = writeln!(
        s,
        "cells {}, checked {}, failures {}, refined {}, max depth {}",
        r.cells, r.cells_checked, r.failure_count, r.refined, r.max_depth
    );
    if let Some(m) = r.min_lower_bound {
        let _ = writeln!(s, "smallest lower bound: {} in cell {}", output::real(m.value), m.cell);
    }
    for f in r.failures.iter().take(10) {
        let kind = if f.counterexample { "counterexample" } else { "unresolved" };
        let _ = writeln!(s, "  cell {} [{}, {}]: {} ({kind})", f.cell, f.t0, f.t1, output::real(f.value));
    }
    let _ = writeln!(s, "{:.2} s", r.wall_time_s);
    s
}

fn grid_rendered(reports: Vec<GridReport>, single: bool) -> Result<Rendered> {
    let code = grid_verifier::combined_exit_code(&reports);
    let human = reports.iter().map(human_grid).collect::<Vec<_>>().join("\n");
    let mut csv = String::new();
    for (k, r) in reports.iter().enumerate() {
        let body = r.to_csv();
        // one header for the whole table
        csv.push_str(if k == 0 { &body } else { body.split_once('\n').map_or("", |x| x.1) });
    }
    let json = if single { serde_json::to_value(&reports[0])? } else { serde_json::to_value(&reports)? };
    Ok(Rendered { code, human, json, csv })
}

fn grid(cfg: &RunConfig, cmd: &GridCmd) -> Result<Rendered> {
    match cmd {
        GridCmd::Run { target, max_depth } => {
            let opts = grid_verifier::GridOptions { max_depth: *max_depth, ..cfg.grid_options() };
            if target.starts_with("paper:") {
                let g = grid_verifier::paper_grid(target)?;
                return grid_rendered(vec![grid_verifier::run_grid(&g, &opts)?], true);
            }
            let manifest = if target == "paper" {
                Manifest::paper()
            } else {
                let path = Path::new(target);
                if !path.exists() {
                    return Err(Error::UnknownId(target.clone()));
                }
                Manifest::from_json(&std::fs::read_to_string(path)?)?
            };
            grid_rendered(grid_verifier::run_manifest(&manifest, &opts)?, false)
        }
        GridCmd::Manifest => {
            let m = Manifest::paper();
            let mut csv = String::from("id,fn_id,x_start,step,cells,paper_ref\n");
            for g in &m.grids {
                let _ = writeln!(
                    csv,
                    "{},{},{},{},{},{}",
                    g.id,
                    g.fn_id,
                    rational::format(&g.x_start),
                    rational::format(&g.step),
                    g.cells,
                    output::csv_field(&g.paper_ref)
                );
            }
            Ok(Rendered { code: 0, human: m.to_json(), json: serde_json::to_value(&m)?, csv })
        }
        GridCmd::Tail { id, lo, hi, step } => {
            let f = FnId::parse(id)?;
            let r = tail_scan(f, rational::parse(lo)?, rational::parse(hi)?, rational::parse(step)?, &cfg.grid_options())?;
            grid_rendered(vec![r], true)
        }
    }
}

fn mi_table(cfg: &RunConfig, horizon: u64) -> Result<Rendered> {
    let engine = cfg.engine()?;
    let v = RangeVerifier::new(&engine, cfg.verify_options());
    let rows: Vec<MiRow> = v.mi_table(horizon)?;
    let mut human = format!("{:<4} {:<8} {:>14} {:>14} {:>16}  status\n", "i", "B_i", "M_i (paper)", "M_i (scan)", "last H_i < 0");
    let mut csv = String::from("i,b,paper_m,derived_m,last_violation,horizon,agrees\n");
    let opt = |v: Option<u64>| v.map_or("-".to_string(), |n| n.to_string());
    for r in &rows {
        let status = match (r.derived_m, r.agrees()) {
            (Some(_), true) => "reproduced",
            (Some(_), false) => "MISMATCH",
            (None, _) => "beyond horizon",
        };
        let _ = writeln!(
            human,
            "{:<4} {:<8} {:>14} {:>14} {:>16}  {status}",
            r.i,
            r.b,
            r.paper_m,
            opt(r.derived_m),
            opt(r.last_violation)
        );
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{},{}",
            r.i,
            r.b,
            r.paper_m,
            r.derived_m.map(|m| m.to_string()).unwrap_or_default(),
            r.last_violation.map(|m| m.to_string()).unwrap_or_default(),
            r.horizon,
            r.agrees()
        );
    }
    let code = if rows.iter().any(|r| r.report.inconclusive()) {
        2
    } else if rows.iter().all(MiRow::agrees) {
        0
    } else {
        1
    };
    let _ = writeln!(human, "scanned n in [2, {horizon}]");
    Ok(Rendered { code, human, json: serde_json::to_value(&rows)?, csv })
}
