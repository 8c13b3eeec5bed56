use crate::bound_catalog::{self, BoundSpec, Target, Verdict};
use crate::error::{Error, Result};
use crate::formula_lib::Vars;
use crate::numeric::{Enclosure, Escalated128, Escalated340, Interval};
use crate::prime_engine::PrimePoint;

use super::predicates::{Eval, PredicateId};

/// Anything that can be checked at a prime point: a catalog bound or a
/// point predicate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Subject {
    Bound(&'static BoundSpec),
    Predicate(PredicateId),
}

impl Subject {
    pub fn parse(id: &str) -> Result<Subject> {
        if let Ok(b) = bound_catalog::lookup(id) {
            return Ok(Subject::Bound(b));
        }
        PredicateId::parse(id)
            .map(Subject::Predicate)
            .ok_or_else(|| Error::UnknownId(id.to_string()))
    }

    pub fn id(&self) -> String {
        match self {
            Subject::Bound(b) => b.id.to_string(),
            Subject::Predicate(p) => p.name(),
        }
    }

    pub fn strict(&self) -> bool {
        match self {
            Subject::Bound(b) => b.strict,
            Subject::Predicate(p) => p.strict(),
        }
    }

    pub fn claimed_threshold(&self) -> Option<u64> {
        match self {
            Subject::Bound(b) => b.claimed_threshold,
            Subject::Predicate(p) => Some(p.claimed_threshold()),
        }
    }

    /// Least index at which the subject can be evaluated.
    pub fn domain_min(&self) -> u64 {
        match self {
            Subject::Bound(b) => b.domain_min.max(1),
            Subject::Predicate(_) => 2,
        }
    }

    pub fn conditional(&self) -> bool {
        matches!(self, Subject::Bound(b) if b.conditional)
    }

    pub fn needs_theta(&self) -> bool {
        matches!(self, Subject::Bound(b) if b.target == Target::Theta)
    }

    fn margin<T: Enclosure>(&self, v: &Vars<T>, theta: &T) -> Eval<T> {
        match self {
            Subject::Bound(b) => Eval::Margin(b.margin(v, theta)),
            Subject::Predicate(p) => p.margin(v),
        }
    }
}

/// Verdict at one point together with how it was reached.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Judgement {
    pub verdict: Verdict,
    /// The margin in the precision that settled the verdict, rounded
    /// outward to `f64`; `None` for vacuous points.
    pub margin: Option<Interval>,
    /// Working precision in bits: 53 for plain `f64` intervals.
    pub bits: u32,
}

fn classify<T: Enclosure>(e: Eval<T>, strict: bool, bits: u32) -> Judgement {
    match e {
        Eval::Margin(m) => Judgement {
            verdict: Verdict::of(&m, strict),
            margin: Some(m.to_interval()),
            bits,
        },
        Eval::Vacuous => Judgement { verdict: Verdict::Holds, margin: None, bits },
        Eval::Straddle => Judgement { verdict: Verdict::Indeterminate, margin: None, bits },
    }
}

fn judge_in<T: Enclosure>(subject: &Subject, pt: &PrimePoint, bits: u32) -> Judgement {
    match Vars::<T>::compute(pt.n, pt.p) {
        Ok(v) => classify(subject.margin(&v, &T::from_interval(pt.theta)), subject.strict(), bits),
        Err(_) => Judgement { verdict: Verdict::Indeterminate, margin: None, bits },
    }
}

/// Decides `subject` at `pt`, recomputing everything at 128 and then 340
/// bits while the `f64` verdict is indeterminate (when `escalate` is set).
pub fn judge(subject: &Subject, pt: &PrimePoint, escalate: bool) -> Judgement {
    let v = Vars::from_point(pt);
    let first = classify(subject.margin(&v, &pt.theta), subject.strict(), 53);
    if first.verdict != Verdict::Indeterminate || !escalate {
        return first;
    }
    let second = judge_in::<Escalated128>(subject, pt, 128);
    if second.verdict != Verdict::Indeterminate {
        return second;
    }
    judge_in::<Escalated340>(subject, pt, 340)
}

/// Recomputes every `Real` quantity at a single arithmetic; used by tests
/// and by the CLI to show a precise margin.
pub fn margin_in<T: Enclosure>(subject: &Subject, pt: &PrimePoint) -> Option<T> {
    let v = Vars::<T>::compute(pt.n, pt.p).ok()?;
    match subject.margin(&v, &T::from_interval(pt.theta)) {
        Eval::Margin(m) => Some(m),
        _ => None,
    }
}

