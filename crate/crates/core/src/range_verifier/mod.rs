//! Exhaustive checks of bounds and point predicates over index ranges.

mod predicates;
mod report;
mod subject;

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};

pub use predicates::{Eval, PredicateId};
pub use report::{
    combined_exit_code, Escalation, EnvelopeCheck, MinMargin, VerificationReport, Violation, LIST_CAP,
};
pub use subject::{judge, margin_in, Judgement, Subject};

use crate::bound_catalog::Verdict;
use crate::error::{Error, Result};
use crate::numeric::{Interval, Real};
use crate::prime_engine::{checkpoint, CheckpointRecord, PointStream, PrimeEngine, PrimePoint};

pub const DEFAULT_CHUNK_SIZE: u64 = 1 << 20;

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Indices per parallel work item.
    pub chunk_size: u64,
    /// Recompute indeterminate verdicts at higher precision.
    pub escalate: bool,
    /// Admit subjects that only hold under an unproven hypothesis.
    pub allow_conditional: bool,
    /// Where progress and checkpoint records go; nothing is written if unset.
    pub checkpoint_dir: Option<PathBuf>,
    /// Continue from the progress file in `checkpoint_dir` if it matches.
    pub resume: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            chunk_size: DEFAULT_CHUNK_SIZE,
            escalate: true,
            allow_conditional: false,
            checkpoint_dir: None,
            resume: false,
        }
    }
}

/// One row of the `B_i`/`M_i` table, re-derived up to a horizon.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MiRow {
    pub i: u8,
    pub b: String,
    pub paper_m: u64,
    pub horizon: u64,
    /// One past the last index in `[2, horizon]` where `H_i < 0`; only set
    /// when the published value lies within the horizon.
    pub derived_m: Option<u64>,
    pub last_violation: Option<u64>,
    pub report: VerificationReport,
}

impl MiRow {
    /// Whether the scan is consistent with the published value: equal when
    /// it is in range, still failing at the horizon's end otherwise.
    pub fn agrees(&self) -> bool {
        match self.derived_m {
            Some(m) => m == self.paper_m && !self.report.inconclusive(),
            None => !self.report.inconclusive(),
        }
    }
}

/// Least index from which a subject held up to the horizon.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ThresholdResult {
    pub subject: String,
    pub horizon: u64,
    pub threshold: u64,
    /// Unresolved points were counted as violations.
    pub inconclusive: bool,
    pub report: VerificationReport,
}

#[derive(Serialize, Deserialize)]
struct Progress {
    subjects: Vec<String>,
    n_lo: u64,
    n_hi: u64,
    envelope: bool,
    next_n: u64,
    reports: Vec<VerificationReport>,
}

pub struct RangeVerifier<'a> {
    engine: &'a PrimeEngine,
    opts: VerifyOptions,
}

impl<'a> RangeVerifier<'a> {
    pub fn new(engine: &'a PrimeEngine, opts: VerifyOptions) -> Self {
        RangeVerifier { engine, opts }
    }

    pub fn options(&self) -> &VerifyOptions {
        &self.opts
    }

    pub fn verify_range(&self, subject: &str, n_lo: u64, n_hi: u64) -> Result<VerificationReport> {
        let s = Subject::parse(subject)?;
        Ok(self.scan(&[s], n_lo, n_hi, false)?.remove(0))
    }

    /// Checks several subjects in one pass over the primes.
    pub fn verify_many(&self, subjects: &[Subject], n_lo: u64, n_hi: u64) -> Result<Vec<VerificationReport>> {
        self.scan(subjects, n_lo, n_hi, false)
    }

    /// Checks a `θ(p_n)` bound and records the empirical envelope check.
    pub fn verify_theta(&self, subject: &str, n_lo: u64, n_hi: u64) -> Result<VerificationReport> {
        let s = Subject::parse(subject)?;
        if !s.needs_theta() {
            return Err(Error::arg(format!("{subject} is not a bound on theta(p_n)")));
        }
        Ok(self.scan(&[s], n_lo, n_hi, true)?.remove(0))
    }

    /// Exhaustive scan of `[domain_min, n_hi]`; the threshold is one past
    /// the last violation.
    pub fn find_min_threshold(&self, subject: &str, n_hi: u64) -> Result<ThresholdResult> {
        let s = Subject::parse(subject)?;
        let lo = s.domain_min();
        let report = self.scan(&[s], lo, n_hi, false)?.remove(0);
        let last_bad = report.last_violation.max(report.last_unresolved);
        Ok(ThresholdResult {
            subject: s.id(),
            horizon: n_hi,
            threshold: last_bad.map_or(lo, |n| n + 1),
            inconclusive: report.inconclusive(),
            report,
        })
    }

    /// Scans `H_1..H_10` on `[2, horizon]` in one pass.
    pub fn mi_table(&self, horizon: u64) -> Result<Vec<MiRow>> {
        use crate::formula_lib::constants::{B, M};
        let subjects: Vec<Subject> = (1..=10).map(|i| Subject::Predicate(PredicateId::H(i))).collect();
        let reports = self.scan(&subjects, 2, horizon, false)?;
        Ok(reports
            .into_iter()
            .enumerate()
            .map(|(k, report)| {
                let paper_m = M[k];
                let last = report.last_violation.max(report.last_unresolved);
                MiRow {
                    i: k as u8 + 1,
                    b: crate::numeric::rational::format(&crate::numeric::rational::Q::new(B[k].0 as i128, B[k].1 as i128)),
                    paper_m,
                    horizon,
                    derived_m: (paper_m <= horizon).then(|| last.map_or(2, |n| n + 1)),
                    last_violation: report.last_violation,
                    report,
                }
            })
            .collect())
    }

    fn scan(&self, subjects: &[Subject], n_lo: u64, n_hi: u64, envelope: bool) -> Result<Vec<VerificationReport>> {
        if subjects.is_empty() {
            return Err(Error::arg("no subject given"));
        }
        if n_lo > n_hi {
            return Err(Error::arg(format!("empty index range [{n_lo}, {n_hi}]")));
        }
        for s in subjects {
            if n_lo < s.domain_min() {
                return Err(Error::arg(format!("{} needs n >= {}", s.id(), s.domain_min())));
            }
            if s.conditional() && !self.opts.allow_conditional {
                return Err(Error::arg(format!("{} is conditional; enable conditional subjects to check it", s.id())));
            }
        }
        if self.opts.chunk_size == 0 {
            return Err(Error::arg("chunk size must be positive"));
        }
        let started = Instant::now();
        let ids: Vec<String> = subjects.iter().map(Subject::id).collect();
        let files = self.opts.checkpoint_dir.as_deref().map(|d| Files::new(d, &ids, n_lo, n_hi));
        let mut reports: Vec<VerificationReport> =
            ids.iter().map(|id| VerificationReport::empty(id.clone(), n_lo, n_hi)).collect();
        let mut start = n_lo;
        if let Some(f) = &files {
            fs::create_dir_all(&f.dir)?;
            match self.opts.resume.then(|| f.load()).transpose()?.flatten() {
                Some(p) if p.subjects == ids && p.n_lo == n_lo && p.n_hi == n_hi && p.envelope == envelope => {
                    start = p.next_n;
                    reports = p.reports;
                    checkpoint::truncate_from(&f.records, start)?;
                }
                _ => f.reset()?,
            }
        }
        if start <= n_hi {
            let plan = self.engine.plan(start, n_hi, self.opts.chunk_size)?;
            let batch = (self.engine.config().workers.max(1) * 2).max(1);
            let stride = self.engine.config().checkpoint_stride;
            let escalate = self.opts.escalate;
            for group in plan.chunks.chunks(batch) {
                let parts = self.engine.map_chunks(&plan, group, |(a, b), stream| {
                    scan_chunk(subjects, stream, a, b, envelope, escalate, stride)
                });
                let mut records = Vec::new();
                for (part, recs) in parts {
                    for (r, p) in reports.iter_mut().zip(&part) {
                        r.absorb(p);
                    }
                    records.extend(recs);
                }
                let next_n = group.last().expect("non-empty group").1 + 1;
                if let Some(f) = &files {
                    checkpoint::append(&f.records, &records)?;
                    f.save(&Progress {
                        subjects: ids.clone(),
                        n_lo,
                        n_hi,
                        envelope,
                        next_n,
                        reports: reports.clone(),
                    })?;
                }
            }
        }
        let secs = started.elapsed().as_secs_f64();
        for r in &mut reports {
            r.wall_time_s = secs;
            r.points_per_s = if secs > 0.0 { (n_hi + 1).saturating_sub(start) as f64 / secs } else { 0.0 };
        }
        Ok(reports)
    }
}

fn scan_chunk(
    subjects: &[Subject],
    stream: PointStream,
    a: u64,
    b: u64,
    envelope: bool,
    escalate: bool,
    stride: u64,
) -> (Vec<VerificationReport>, Vec<CheckpointRecord>) {
    let mut out: Vec<VerificationReport> = subjects
        .iter()
        .map(|s| {
            let mut r = VerificationReport::empty(s.id(), a, b);
            if envelope {
                r.envelope = Some(EnvelopeCheck::default());
            }
            r
        })
        .collect();
    let mut records = Vec::new();
    for pt in stream {
        if pt.n % stride == 0 {
            records.push(CheckpointRecord { n: pt.n, p: pt.p, theta: pt.theta });
        }
        for (s, r) in subjects.iter().zip(out.iter_mut()) {
            record(r, &judge(s, &pt, escalate), &pt);
            if let Some(e) = r.envelope.as_mut() {
                envelope_step(e, &pt);
            }
        }
    }
    (out, records)
}

fn record(r: &mut VerificationReport, j: &Judgement, pt: &PrimePoint) {
    r.count_checked += 1;
    if j.bits > 53 || j.verdict == Verdict::Indeterminate {
        r.escalated_count += 1;
        let settled = j.verdict != Verdict::Indeterminate;
        if r.indeterminates.len() < LIST_CAP {
            r.indeterminates.push(Escalation { n: pt.n, verdict: j.verdict, bits: settled.then_some(j.bits) });
        }
        if !settled {
            r.unresolved_count += 1;
            r.last_unresolved = Some(pt.n);
        }
    }
    if let Some(m) = j.margin {
        if r.min_margin.is_none_or(|c| m.lo < c.margin.lo) {
            r.min_margin = Some(MinMargin { n: pt.n, margin: m });
        }
    }
    match (j.verdict, j.margin) {
        (Verdict::Fails, m) => {
            r.violation_count += 1;
            r.last_violation = Some(pt.n);
            if r.violations.len() < LIST_CAP {
                r.violations.push(Violation { n: pt.n, p: pt.p, margin: m.unwrap_or(Interval::ENTIRE) });
            }
        }
        (Verdict::Holds, None) => r.vacuous_count += 1,
        _ => {}
    }
}

fn envelope_step(e: &mut EnvelopeCheck, pt: &PrimePoint) {
    let p = Interval::from_u64(pt.p);
    let d = pt.theta - p;
    let gap = if d.lo > 0.0 {
        d.lo
    } else if d.hi < 0.0 {
        -d.hi
    } else {
        0.0
    };
    let scale = p / pt.z.powi(3);
    let allowed = Interval::ratio(15, 100) * scale;
    e.checked += 1;
    if gap >= allowed.hi {
        e.failures += 1;
        e.first_failure = e.first_failure.or(Some(pt.n));
        e.last_failure = Some(pt.n);
    }
    let ratio = (Interval::point(gap) / scale).lo;
    if e.max_ratio.is_none_or(|(_, m)| ratio > m) {
        e.max_ratio = Some((pt.n, ratio));
    }
}

struct Files {
    dir: PathBuf,
    progress: PathBuf,
    records: PathBuf,
}

impl Files {
    fn new(dir: &Path, ids: &[String], n_lo: u64, n_hi: u64) -> Self {
        let stem = format!("{}_{n_lo}_{n_hi}", ids.join("+"));
        Files {
            dir: dir.to_path_buf(),
            progress: dir.join(format!("{stem}.partial.json")),
            records: dir.join(format!("{stem}.checkpoints.csv")),
        }
    }

    fn load(&self) -> Result<Option<Progress>> {
        if !self.progress.exists() {
            return Ok(None);
        }
        Ok(Some(serde_json::from_str(&fs::read_to_string(&self.progress)?)?))
    }

    fn save(&self, p: &Progress) -> Result<()> {
        let tmp = self.progress.with_extension("tmp");
        fs::write(&tmp, serde_json::to_vec(p)?)?;
        fs::rename(tmp, &self.progress)?;
        Ok(())
    }

    fn reset(&self) -> Result<()> {
        for f in [&self.progress, &self.records] {
            if f.exists() {
                fs::remove_file(f)?;
            }
        }
        Ok(())
    }
}
