//! Cell-by-cell certification of the grid inequalities.
//!
//! A bivariate grid function `F(x, t)` is nondecreasing in `x` and
//! nonincreasing in `t`, so on a cell `[t0, t1]` the value `F(t0, t1)` is a
//! lower bound for `F(x, x)`. Each cell is evaluated once in outward-rounded
//! `f64`; cells that do not come out nonnegative are retried at 128 bits and
//! then bisected at exact rational midpoints.
//!
//! Tail scans apply the same machinery to univariate functions (and to the
//! diagonal of a grid function) on ranges where no grid is claimed, using the
//! best of the naive enclosure, the mean-value form and, when it applies, the
//! bracket bound. They are numeric evidence only.

mod manifest;
mod report;

use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

pub use manifest::{bracket_domain, paper_grid, paper_grids, rational_str, Bracket, GridSpec, Manifest, MANIFEST_VERSION};
pub use report::{combined_exit_code, CellFailure, GridReport, MinBound, FAILURE_CAP};

use crate::error::{Error, Result};
use crate::formula_lib::{eval_bivariate, eval_univariate, Arity, FnId};
use crate::numeric::rational::{lift, Q};
use crate::numeric::{Dual, Enclosure, Escalated128, Escalated340, Interval, Real};

pub const GRID_LABEL: &str = "grid certification";
pub const TAIL_LABEL: &str = "bounded-tail numeric check";

#[derive(Clone, Debug)]
pub struct GridOptions {
    pub workers: usize,
    /// Bisection levels allowed below a grid cell.
    pub max_depth: u32,
    pub chunk_cells: u64,
    /// Retry failing cells at 128 bits before bisecting.
    pub escalate: bool,
}

impl Default for GridOptions {
    fn default() -> Self {
        GridOptions {
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
            max_depth: 8,
            chunk_cells: 20_000,
            escalate: true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Mode {
    Grid,
    Tail { bracket: bool },
}

struct Plan {
    id: String,
    fn_id: FnId,
    mode: Mode,
    label: &'static str,
    x_start: Q,
    step: Q,
    x_end: Q,
    cells: u64,
}

impl Plan {
    fn cell(&self, i: u64) -> (Q, Q) {
        let a = self.x_start + self.step * Q::from_integer(i as i128);
        let b = a + self.step;
        (a, if b > self.x_end { self.x_end } else { b })
    }
}

fn hull<T: Enclosure>(a: &Q, b: &Q) -> T {
    let (a, b): (Interval, Interval) = (lift(a), lift(b));
    T::from_interval(a.hull(&b))
}

/// An enclosure whose lower end bounds the function from below on `[a, b]`.
fn cell_bound<T: Enclosure>(f: FnId, mode: Mode, a: &Q, b: &Q) -> Interval {
    match mode {
        Mode::Grid => eval_bivariate::<T>(f, &lift(a), &lift(b)).map_or(Interval::ENTIRE, |v| v.to_interval()),
        Mode::Tail { bracket } => {
            let eval = |x: &T| match f.arity() {
                Arity::Univariate => eval_univariate(f, x),
                _ => eval_bivariate(f, x, x),
            };
            let eval_d = |x: &Dual<T>| match f.arity() {
                Arity::Univariate => eval_univariate(f, x),
                _ => eval_bivariate(f, x, x),
            };
            let x: T = hull(a, b);
            let m = (a + b) / Q::from_integer(2);
            let mut lo = f64::NEG_INFINITY;
            let mut hi = f64::INFINITY;
            if let Ok(v) = eval(&x) {
                lo = lo.max(v.lower());
                hi = hi.min(v.upper());
            }
            if let (Ok(fm), Ok(d)) = (eval(&lift(&m)), eval_d(&Dual::var(x.clone()))) {
                let v = fm + d.d * (x - lift(&m));
                lo = lo.max(v.lower());
                hi = hi.min(v.upper());
            }
            if bracket {
                if let Ok(v) = eval_bivariate::<T>(f, &lift(a), &lift(b)) {
                    lo = lo.max(v.lower());
                }
            }
            if lo.is_nan() || hi.is_nan() || lo > hi {
                return Interval::ENTIRE;
            }
            Interval::new(lo, hi)
        }
    }
}

/// `f(a)` (or `F(a, a)`) at 340 bits.
fn value_at(f: FnId, a: &Q) -> Option<Interval> {
    let x: Escalated340 = lift(a);
    let v = match f.arity() {
        Arity::Univariate => eval_univariate(f, &x),
        _ => eval_bivariate(f, &x, &x),
    };
    v.ok().map(|v| v.to_interval())
}

struct Leaf {
    ok: bool,
    a: Q,
    b: Q,
    value: Interval,
    depth: u32,
    refined: bool,
}

fn check(plan: &Plan, opts: &GridOptions, a: Q, b: Q, depth: u32) -> Leaf {
    let mut value = cell_bound::<Interval>(plan.fn_id, plan.mode, &a, &b);
    let mut refined = depth > 0;
    if value.lo < 0.0 && opts.escalate {
        let v = cell_bound::<Escalated128>(plan.fn_id, plan.mode, &a, &b);
        value = v.intersect(&value).unwrap_or(v);
        refined = true;
    }
    if value.lo >= 0.0 || depth >= opts.max_depth {
        return Leaf { ok: value.lo >= 0.0, a, b, value, depth, refined };
    }
    let m = (a + b) / Q::from_integer(2);
    let l = check(plan, opts, a, m, depth + 1);
    let r = check(plan, opts, m, b, depth + 1);
    let depth = l.depth.max(r.depth);
    let ok = l.ok && r.ok;
    // report the failing half if there is one, else the tighter one
    let worst = match (l.ok, r.ok) {
        (false, true) => l,
        (true, false) => r,
        _ if r.value.lo < l.value.lo => r,
        _ => l,
    };
    Leaf { ok, depth, refined: true, ..worst }
}

fn run_chunk(plan: &Plan, opts: &GridOptions, from: u64, to: u64) -> GridReport {
    let mut rep = empty_report(plan);
    for i in from..to {
        let (a, b) = plan.cell(i);
        let leaf = check(plan, opts, a, b, 0);
        rep.cells_checked += 1;
        rep.refined += leaf.refined as u64;
        rep.max_depth = rep.max_depth.max(leaf.depth);
        if rep.min_lower_bound.is_none_or(|m| leaf.value.lo < m.value.lo) {
            rep.min_lower_bound = Some(MinBound { cell: i, value: leaf.value });
        }
        if !leaf.ok {
            rep.failure_count += 1;
            if rep.failures.len() < FAILURE_CAP {
                let counterexample = value_at(plan.fn_id, &leaf.a).is_some_and(|v| v.hi < 0.0);
                rep.failures.push(CellFailure {
                    cell: i,
                    t0: rational_str::format(&leaf.a),
                    t1: rational_str::format(&leaf.b),
                    value: leaf.value,
                    counterexample,
                });
            }
        }
    }
    rep
}

fn empty_report(plan: &Plan) -> GridReport {
    GridReport {
        spec_id: plan.id.clone(),
        fn_id: plan.fn_id.name(),
        label: plan.label.into(),
        x_start: rational_str::format(&plan.x_start),
        x_end: rational_str::format(&plan.x_end),
        cells: plan.cells,
        cells_checked: 0,
        failure_count: 0,
        failures: Vec::new(),
        min_lower_bound: None,
        refined: 0,
        max_depth: 0,
        wall_time_s: 0.0,
    }
}

fn execute(plan: &Plan, opts: &GridOptions) -> Result<GridReport> {
    if opts.workers == 0 || opts.chunk_cells == 0 {
        return Err(Error::arg("workers and chunk size must be positive"));
    }
    let started = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.workers)
        .build()
        .map_err(|e| Error::arg(e.to_string()))?;
    let chunks = plan.cells.div_ceil(opts.chunk_cells);
    let parts: Vec<GridReport> = pool.install(|| {
        (0..chunks)
            .into_par_iter()
            .map(|c| {
                let from = c * opts.chunk_cells;
                run_chunk(plan, opts, from, (from + opts.chunk_cells).min(plan.cells))
            })
            .collect()
    });
    let mut rep = empty_report(plan);
    for p in parts {
        rep.merge(p);
    }
    rep.wall_time_s = started.elapsed().as_secs_f64();
    Ok(rep)
}

/// Certifies every cell of `spec`.
pub fn run_grid(spec: &GridSpec, opts: &GridOptions) -> Result<GridReport> {
    spec.validate()?;
    let plan = Plan {
        id: spec.id.clone(),
        fn_id: spec.function()?,
        mode: Mode::Grid,
        label: GRID_LABEL,
        x_start: spec.x_start,
        step: spec.step,
        x_end: spec.x_end(),
        cells: spec.cells,
    };
    execute(&plan, opts)
}

/// Runs all grids of a manifest, in order.
pub fn run_manifest(m: &Manifest, opts: &GridOptions) -> Result<Vec<GridReport>> {
    m.grids.iter().map(|g| run_grid(g, opts)).collect()
}

/// Checks `f >= 0` on `[x_lo, x_hi]` in cells of width `step` (the last one
/// clipped). Bivariate functions are checked on the diagonal.
pub fn tail_scan(f: FnId, x_lo: Q, x_hi: Q, step: Q, opts: &GridOptions) -> Result<GridReport> {
    if f.arity() == Arity::Point {
        return Err(Error::arg(format!("{f} is a point function")));
    }
    if step <= Q::from_integer(0) || x_hi <= x_lo {
        return Err(Error::arg("tail scan needs x_lo < x_hi and a positive step"));
    }
    let dom_min = match f {
        FnId::Phi | FnId::Aux(_) => Q::from_integer(1),
        FnId::Lemma21 => Q::new(211, 100),
        _ => Q::from_integer(i128::MIN / 4),
    };
    if x_lo < dom_min {
        return Err(Error::domain(format!("{f} is only defined from {}", rational_str::format(&dom_min))));
    }
    let bracket = bracket_domain(f).is_some_and(|(lo, hi)| x_lo >= lo && x_hi <= hi);
    let span = (x_hi - x_lo) / step;
    let cells = span.ceil().to_integer();
    if cells > u64::MAX as i128 / 2 {
        return Err(Error::arg("too many cells"));
    }
    let plan = Plan {
        id: format!("tail:{f}"),
        fn_id: f,
        mode: Mode::Tail { bracket },
        label: TAIL_LABEL,
        x_start: x_lo,
        step,
        x_end: x_hi,
        cells: cells as u64,
    };
    execute(&plan, opts)
}

/// A sampled triple where `F(x, x) < F(t0, t1)` although `t0 <= x <= t1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BracketViolation {
    pub t0: f64,
    pub x: f64,
    pub t1: f64,
}

/// Samples ordered triples in `[lo, hi]` and reports any certain violation of
/// the bracket shape, evaluated at 128 bits.
pub fn spot_check_bracket(f: FnId, lo: f64, hi: f64, samples: usize, seed: u64) -> Result<Vec<BracketViolation>> {
    if f.arity() != Arity::Bivariate {
        return Err(Error::arg(format!("{f} is not a bivariate grid function")));
    }
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = Vec::new();
    for _ in 0..samples {
        let mut v = [rng.gen_range(lo..=hi), rng.gen_range(lo..=hi), rng.gen_range(lo..=hi)];
        v.sort_by(f64::total_cmp);
        let [t0, x, t1] = v;
        let e = |v: f64| Escalated128::from_interval(Interval::point(v));
        let diag = eval_bivariate(f, &e(x), &e(x))?;
        let corner = eval_bivariate(f, &e(t0), &e(t1))?;
        if diag.upper() < corner.lower() {
            out.push(BracketViolation { t0, x, t1 });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts() -> GridOptions {
        GridOptions { workers: 1, ..GridOptions::default() }
    }

    #[test]
    fn cells_tile_the_range_exactly() {
        let g = paper_grid("paper:r").unwrap();
        assert_eq!(g.cell(0).0, g.x_start);
        assert_eq!(g.cell(g.cells - 1).1, g.x_end());
        for i in [0, 17, 2798] {
            assert_eq!(g.cell(i).1, g.cell(i + 1).0);
        }
    }

    #[test]
    fn clipped_last_tail_cell() {
        let rep = tail_scan(FnId::W1, Q::new(5, 1), Q::new(51, 10), Q::new(3, 100), &opts()).unwrap();
        assert_eq!(rep.cells, 4);
        assert_eq!(rep.x_end, "5.1");
        assert!(rep.passed(), "{rep:?}");
    }

    #[test]
    fn negative_function_gives_a_counterexample() {
        // f5(1) = 4.48e - 25.5
        let rep = tail_scan(FnId::Aux(5), Q::from_integer(1), Q::new(12, 10), Q::new(1, 10), &opts()).unwrap();
        assert_eq!(rep.exit_code(), 1);
        assert!(rep.failures[0].counterexample);
    }

    #[test]
    fn point_functions_are_rejected() {
        assert!(tail_scan(FnId::F0, Q::from_integer(1), Q::from_integer(2), Q::new(1, 2), &opts()).is_err());
        assert!(spot_check_bracket(FnId::Phi, 1.0, 2.0, 1, 0).is_err());
    }
}
