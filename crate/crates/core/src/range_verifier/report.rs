use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::bound_catalog::Verdict;
use crate::numeric::hexfloat;
use crate::numeric::Interval;

/// Most violations (and escalations) kept per report; the counts are exact.
pub const LIST_CAP: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub n: u64,
    pub p: u64,
    pub margin: Interval,
}

/// A point whose `f64` verdict was indeterminate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Escalation {
    pub n: u64,
    pub verdict: Verdict,
    /// Precision that settled it; absent when it stayed indeterminate.
    pub bits: Option<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MinMargin {
    pub n: u64,
    pub margin: Interval,
}

/// Empirical check of `|θ(p_n) - p_n| < 0.15 p_n / log^3 p_n`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct EnvelopeCheck {
    pub checked: u64,
    /// Points where the envelope certainly fails.
    pub failures: u64,
    pub first_failure: Option<u64>,
    pub last_failure: Option<u64>,
    /// Largest lower bound of `|θ - p| log^3 p / p` seen, with its index.
    pub max_ratio: Option<(u64, f64)>,
}

impl EnvelopeCheck {
    pub(crate) fn merge(&mut self, o: &EnvelopeCheck) {
        self.checked += o.checked;
        self.failures += o.failures;
        self.first_failure = self.first_failure.or(o.first_failure);
        self.last_failure = o.last_failure.or(self.last_failure);
        if let Some((n, r)) = o.max_ratio {
            if self.max_ratio.is_none_or(|(_, m)| r > m) {
                self.max_ratio = Some((n, r));
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub subject: String,
    pub n_lo: u64,
    pub n_hi: u64,
    pub count_checked: u64,
    pub violation_count: u64,
    /// The first [`LIST_CAP`] violations, ascending.
    pub violations: Vec<Violation>,
    pub last_violation: Option<u64>,
    pub escalated_count: u64,
    /// Indeterminate `f64` verdicts and how escalation settled them.
    pub indeterminates: Vec<Escalation>,
    pub unresolved_count: u64,
    pub last_unresolved: Option<u64>,
    /// Points where the inequality is vacuous (e.g. a logarithm of a
    /// non-positive quantity on its larger side).
    pub vacuous_count: u64,
    pub min_margin: Option<MinMargin>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub envelope: Option<EnvelopeCheck>,
    pub wall_time_s: f64,
    pub points_per_s: f64,
}

impl VerificationReport {
    pub(crate) fn empty(subject: String, n_lo: u64, n_hi: u64) -> Self {
        VerificationReport {
            subject,
            n_lo,
            n_hi,
            count_checked: 0,
            violation_count: 0,
            violations: Vec::new(),
            last_violation: None,
            escalated_count: 0,
            indeterminates: Vec::new(),
            unresolved_count: 0,
            last_unresolved: None,
            vacuous_count: 0,
            min_margin: None,
            envelope: None,
            wall_time_s: 0.0,
            points_per_s: 0.0,
        }
    }

    /// Appends the results of a later, adjacent index range.
    pub(crate) fn absorb(&mut self, o: &VerificationReport) {
        self.count_checked += o.count_checked;
        self.violation_count += o.violation_count;
        let room = LIST_CAP.saturating_sub(self.violations.len());
        self.violations.extend(o.violations.iter().take(room).copied());
        self.last_violation = o.last_violation.or(self.last_violation);
        self.escalated_count += o.escalated_count;
        let room = LIST_CAP.saturating_sub(self.indeterminates.len());
        self.indeterminates.extend(o.indeterminates.iter().take(room).copied());
        self.unresolved_count += o.unresolved_count;
        self.last_unresolved = o.last_unresolved.or(self.last_unresolved);
        self.vacuous_count += o.vacuous_count;
        if let Some(m) = o.min_margin {
            if self.min_margin.is_none_or(|c| m.margin.lo < c.margin.lo) {
                self.min_margin = Some(m);
            }
        }
        if let Some(e) = &o.envelope {
            self.envelope.get_or_insert_with(EnvelopeCheck::default).merge(e);
        }
    }

    pub fn inconclusive(&self) -> bool {
        self.unresolved_count > 0
    }

    pub fn clean(&self) -> bool {
        self.violation_count == 0 && !self.inconclusive()
    }

    /// 0 clean, 1 violations, 2 unresolved indeterminates.
    pub fn exit_code(&self) -> i32 {
        if self.inconclusive() {
            2
        } else if self.violation_count > 0 {
            1
        } else {
            0
        }
    }

    /// Copy with the timing zeroed, for reproducibility comparisons.
    pub fn without_timing(&self) -> Self {
        VerificationReport { wall_time_s: 0.0, points_per_s: 0.0, ..self.clone() }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One row per listed violation or escalation, after a summary row.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("kind,subject,n,p,value_lo,value_hi,note\n");
        let _ = writeln!(
            s,
            "summary,{},{},,,,checked={} violations={} unresolved={} range={}..{}",
            self.subject,
            self.last_violation.map(|n| n.to_string()).unwrap_or_default(),
            self.count_checked,
            self.violation_count,
            self.unresolved_count,
            self.n_lo,
            self.n_hi
        );
        for v in &self.violations {
            let _ = writeln!(
                s,
                "violation,{},{},{},{},{},",
                self.subject,
                v.n,
                v.p,
                hexfloat::format(v.margin.lo),
                hexfloat::format(v.margin.hi)
            );
        }
        for e in &self.indeterminates {
            let _ = writeln!(
                s,
                "escalation,{},{},,,,{:?} at {} bits",
                self.subject,
                e.n,
                e.verdict,
                e.bits.map(|b| b.to_string()).unwrap_or_else(|| "-".into())
            );
        }
        s
    }
}

/// Exit code for several reports: the worst of them.
pub fn combined_exit_code(reports: &[VerificationReport]) -> i32 {
    reports.iter().map(|r| r.exit_code()).max().unwrap_or(0)
}
