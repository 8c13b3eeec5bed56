//! A quick end-to-end self check: exact identities, the sieve against a plain
//! sieve, `f64` enclosures against 340-bit ones, small thresholds and the
//! smallest grid.

use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::formula_lib::{
    eval_at_point, eval_bivariate, eval_univariate, Arity, FnId, PolyId, ProofConstants, StepParam, Vars,
};
use crate::grid_verifier::{paper_grid, run_grid, spot_check_bracket, tail_scan, GridOptions};
use crate::numeric::rational::{parse, Q};
use crate::numeric::{Enclosure, Escalated340, Interval, Real};
use crate::prime_engine::{EngineConfig, PrimeEngine};
use crate::range_verifier::{RangeVerifier, VerifyOptions};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SelftestReport {
    pub checks: Vec<Check>,
    pub wall_time_s: f64,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }
}

fn q(s: &str) -> Q {
    parse(s).expect("literal")
}

fn trim(mut v: Vec<Q>) -> Vec<Q> {
    while v.last() == Some(&Q::from_integer(0)) {
        v.pop();
    }
    v
}

fn padd(a: &[Q], b: &[Q]) -> Vec<Q> {
    let z = Q::from_integer(0);
    trim((0..a.len().max(b.len())).map(|i| *a.get(i).unwrap_or(&z) + *b.get(i).unwrap_or(&z)).collect())
}

fn pscale(a: &[Q], s: Q) -> Vec<Q> {
    a.iter().map(|c| *c * s).collect()
}

fn pmul(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut out = vec![Q::from_integer(0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += *x * *y;
        }
    }
    trim(out)
}

fn identities() -> Vec<(String, bool)> {
    let c = |id: PolyId| id.coefficients();
    let u = [q("1"), q("-1"), q("1")];
    let (p1, p8, p9, p10, p12) = (c(PolyId::P1), c(PolyId::P8), c(PolyId::P9), c(PolyId::P10), c(PolyId::P12));
    let q7 = [
        pmul(&u, &p12),
        pmul(&u, &p8),
        pscale(&p9, q("-3.15")),
        pscale(&p10, q("-1")),
        pscale(&p8, q("12.85")),
    ]
    .iter()
    .fold(Vec::new(), |acc, t| padd(&acc, t));
    let q8 = padd(&pscale(&p10, q("3.15")), &pscale(&p9, q("12.85")));
    let q9 = padd(&pscale(&pmul(&u, &p9), q("2")), &pscale(&pmul(&p8, &p12), q("-1")));
    let consts = ProofConstants::new();
    vec![
        ("P12 = P8 + 6.3(x^2 - x + 1)".into(), p12 == padd(&p8, &pscale(&u, q("6.3")))),
        (
            "8.7w^2 - 38w + 10.7 = P1 + 5.7(w^2 - w + 1) - 26.3w".into(),
            vec![q("10.7"), q("-38"), q("8.7")] == padd(&padd(&p1, &pscale(&u, q("5.7"))), &[q("0"), q("-26.3")]),
        ),
        ("Q7 expansion".into(), c(PolyId::Q7) == q7),
        ("Q8 expansion".into(), c(PolyId::Q8) == q8),
        ("Q9 expansion".into(), c(PolyId::Q9) == q9),
        ("S1 = 4.477".into(), consts.s1 == q("4.477")),
        ("S2 = 2.7149".into(), consts.s2 == q("2.7149")),
    ]
}

fn plain_sieve(limit: usize) -> Vec<bool> {
    let mut is = vec![true; limit + 1];
    is[0] = false;
    if limit >= 1 {
        is[1] = false;
    }
    let mut i = 2;
    while i * i <= limit {
        if is[i] {
            (i * i..=limit).step_by(i).for_each(|j| is[j] = false);
        }
        i += 1;
    }
    is
}

/// `f64` and 340-bit enclosures of the same input must overlap.
fn sample_consistency(id: FnId, samples: usize, rng: &mut StdRng) -> Result<(), String> {
    let steps = [
        StepParam::upper_step1(),
        StepParam::upper_step2(),
        StepParam::lower_step1(),
        StepParam::lower_step2(),
        StepParam::lower_step3(),
    ];
    for _ in 0..samples {
        let (a, b) = match id.arity() {
            Arity::Univariate => {
                let lo = match id {
                    FnId::Phi | FnId::Aux(_) => 1.0,
                    FnId::Lemma21 => 2.11,
                    _ => -1.0,
                };
                let x = rng.gen_range(lo..30.0);
                let f = eval_univariate(id, &Interval::point(x));
                let g = eval_univariate(id, &Escalated340::from_interval(Interval::point(x)));
                match (f, g) {
                    (Ok(f), Ok(g)) => (f, g.to_interval()),
                    (Err(_), Err(_)) | (Err(_), Ok(_)) => continue,
                    (Ok(_), Err(e)) => return Err(format!("{id} at {x}: {e}")),
                }
            }
            Arity::Bivariate => {
                let (x, t) = (rng.gen_range(0.7..7.0), rng.gen_range(0.7..7.0));
                let e = |v: f64| Escalated340::from_interval(Interval::point(v));
                let f = eval_bivariate(id, &Interval::point(x), &Interval::point(t)).map_err(|e| e.to_string())?;
                let g = eval_bivariate(id, &e(x), &e(t)).map_err(|e| e.to_string())?;
                (f, g.to_interval())
            }
            Arity::Point => {
                let n = rng.gen_range(3..1u64 << 40);
                let p = rng.gen_range(n + 2..(n + 2) * 40);
                let step = &steps[rng.gen_range(0..steps.len())];
                let f = Vars::<Interval>::compute(n, p).and_then(|v| eval_at_point(id, &v, Some(step)));
                let g = Vars::<Escalated340>::compute(n, p).and_then(|v| eval_at_point(id, &v, Some(step)));
                match (f, g) {
                    (Ok(f), Ok(g)) => (f, g.to_interval()),
                    (Err(_), _) => continue,
                    (Ok(_), Err(e)) => return Err(format!("{id} at n = {n}: {e}")),
                }
            }
        };
        if !(a.lo <= b.hi && b.lo <= a.hi) {
            return Err(format!("{id}: f64 {a:?} misses 340-bit {b:?}"));
        }
    }
    Ok(())
}

fn check(name: impl Into<String>, r: Result<String, String>) -> Check {
    match r {
        Ok(detail) => Check { name: name.into(), passed: true, detail },
        Err(detail) => Check { name: name.into(), passed: false, detail },
    }
}

/// Runs every check; `workers` is passed to the engine and the grid runner.
pub fn run(workers: usize) -> SelftestReport {
    let started = Instant::now();
    let mut checks = Vec::new();

    for (name, ok) in identities() {
        checks.push(check(format!("identity: {name}"), if ok { Ok("exact".into()) } else { Err("differs".into()) }));
    }

    let engine = PrimeEngine::new(EngineConfig { ceiling: 2_000_000, workers, ..EngineConfig::default() });
    let engine = match engine {
        Ok(e) => e,
        Err(e) => {
            checks.push(check("prime engine", Err(e.to_string())));
            return SelftestReport { checks, wall_time_s: started.elapsed().as_secs_f64() };
        }
    };
    checks.push(check("sieve against plain sieve to 2e6", {
        let plain = plain_sieve(2_000_000);
        let want: Vec<u64> = (0..2_000_000u64).filter(|&n| plain[n as usize]).collect();
        match engine.sieve_range(0, 2_000_000) {
            Ok(got) if got == want => Ok(format!("{} primes", got.len())),
            Ok(got) => Err(format!("{} primes, expected {}", got.len(), want.len())),
            Err(e) => Err(e.to_string()),
        }
    }));
    checks.push(check("p_100000 = 1299709", match engine.nth_prime(100_000) {
        Ok(1_299_709) => Ok("1299709".into()),
        Ok(p) => Err(p.to_string()),
        Err(e) => Err(e.to_string()),
    }));

    let mut rng = StdRng::seed_from_u64(0x5e1f);
    let mut misses = Vec::new();
    for id in FnId::all() {
        if let Err(e) = sample_consistency(id, 200, &mut rng) {
            misses.push(e);
        }
    }
    checks.push(check(
        "f64 against 340-bit enclosures, 200 samples per function",
        if misses.is_empty() { Ok(format!("{} functions", FnId::all().len())) } else { Err(misses.join("; ")) },
    ));

    let verifier = RangeVerifier::new(&engine, VerifyOptions::default());
    for (id, want) in [
        ("eq-1.4-upper", 6),
        ("eq-1.6-upper", 4),
        ("eq-1.7-upper", 20),
        ("corollary-unconditional-1.12", 3468),
        ("kor-2.6", 71),
        ("theta-upper-10.367", 2581),
        ("H6", 5),
    ] {
        checks.push(check(format!("threshold of {id} up to 1e5"), match verifier.find_min_threshold(id, 100_000) {
            Ok(t) if t.threshold == want && !t.inconclusive => Ok(want.to_string()),
            Ok(t) => Err(format!("found {}, published {want}", t.threshold)),
            Err(e) => Err(e.to_string()),
        }));
    }

    let opts = GridOptions { workers, ..GridOptions::default() };
    checks.push(check("grid paper:r", match paper_grid("paper:r").and_then(|g| run_grid(&g, &opts)) {
        Ok(r) if r.passed() => Ok(format!("{} cells", r.cells)),
        Ok(r) => Err(format!("{} failing cells", r.failure_count)),
        Err(e) => Err(e.to_string()),
    }));
    let mut tails = Vec::new();
    for i in 1..=10 {
        match tail_scan(FnId::Aux(i), q("3.05"), q("30"), q("0.01"), &opts) {
            Ok(r) if r.passed() => {}
            Ok(r) => tails.push(format!("f{i}: {} failing cells", r.failure_count)),
            Err(e) => tails.push(format!("f{i}: {e}")),
        }
    }
    checks.push(check(
        "f1..f10 nonnegative on [3.05, 30]",
        if tails.is_empty() { Ok("bounded-tail numeric check".into()) } else { Err(tails.join("; ")) },
    ));
    let mut bad = Vec::new();
    for f in [FnId::GridG1, FnId::GridH1, FnId::Alpha, FnId::Beta, FnId::Gamma, FnId::R] {
        let lo = if f == FnId::R { 0.7 } else { 3.05 };
        match spot_check_bracket(f, lo, 30.0, 200, 1) {
            Ok(v) if v.is_empty() => {}
            Ok(v) => bad.push(format!("{f}: {:?}", v[0])),
            Err(e) => bad.push(format!("{f}: {e}")),
        }
    }
    checks.push(check(
        "bracket shape spot check",
        if bad.is_empty() { Ok("200 triples per function".into()) } else { Err(bad.join("; ")) },
    ));

    SelftestReport { checks, wall_time_s: started.elapsed().as_secs_f64() }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identities_hold() {
        for (name, ok) in identities() {
            assert!(ok, "{name}");
        }
    }

    #[test]
    fn plain_sieve_small() {
        let s = plain_sieve(30);
        let p: Vec<usize> = (0..=30).filter(|&i| s[i]).collect();
        assert_eq!(p, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }
}
