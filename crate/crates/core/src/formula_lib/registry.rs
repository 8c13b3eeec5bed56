use std::fmt;

use serde::Serialize;

use super::functions as fx;
use super::point::{self, StepParam, Vars};
use crate::error::{Error, Result};
use crate::numeric::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FnId {
    Phi,
    G0,
    G1,
    W1,
    /// `f_1..f_10`.
    Aux(u8),
    Lemma21,
    /// First upper-bound grid function `g_1(x, t)`.
    GridG1,
    /// Second upper-bound grid function `h_1(x, t)`.
    GridH1,
    Alpha,
    Beta,
    Gamma,
    R,
    F0,
    F1,
    /// `H_1..H_10`.
    H(u8),
    B0,
    B1,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Arity {
    Univariate,
    Bivariate,
    Point,
}

#[derive(Clone, Debug, Serialize)]
pub struct FnInfo {
    pub id: String,
    pub arity: Arity,
    pub domain: String,
    pub paper_ref: String,
}

impl FnId {
    pub fn all() -> Vec<FnId> {
        let mut v = vec![FnId::Phi, FnId::G0, FnId::G1, FnId::W1];
        v.extend((1..=10).map(FnId::Aux));
        v.extend([
            FnId::Lemma21,
            FnId::GridG1,
            FnId::GridH1,
            FnId::Alpha,
            FnId::Beta,
            FnId::Gamma,
            FnId::R,
            FnId::F0,
            FnId::F1,
        ]);
        v.extend((1..=10).map(FnId::H));
        v.extend([FnId::B0, FnId::B1]);
        v
    }

    pub fn name(self) -> String {
        match self {
            FnId::Phi => "Phi".into(),
            FnId::G0 => "G0".into(),
            FnId::G1 => "G1".into(),
            FnId::W1 => "W1".into(),
            FnId::Aux(i) => format!("f{i}"),
            FnId::Lemma21 => "lemma-2.1".into(),
            FnId::GridG1 => "g1".into(),
            FnId::GridH1 => "h1".into(),
            FnId::Alpha => "alpha".into(),
            FnId::Beta => "beta".into(),
            FnId::Gamma => "gamma".into(),
            FnId::R => "r".into(),
            FnId::F0 => "F0".into(),
            FnId::F1 => "F1".into(),
            FnId::H(i) => format!("H{i}"),
            FnId::B0 => "b0".into(),
            FnId::B1 => "b1".into(),
        }
    }

    pub fn parse(s: &str) -> Result<FnId> {
        FnId::all()
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::UnknownId(s.to_string()))
    }

    pub fn arity(self) -> Arity {
        match self {
            FnId::Phi | FnId::G0 | FnId::G1 | FnId::W1 | FnId::Aux(_) | FnId::Lemma21 => {
                Arity::Univariate
            }
            FnId::GridG1 | FnId::GridH1 | FnId::Alpha | FnId::Beta | FnId::Gamma | FnId::R => {
                Arity::Bivariate
            }
            _ => Arity::Point,
        }
    }

    pub fn info(self) -> FnInfo {
        let (domain, paper_ref): (&str, String) = match self {
            FnId::Phi => ("x >= 1", "Appendix, definition of Phi".into()),
            FnId::G0 => ("all real x", "display before (2.11)".into()),
            FnId::G1 => ("all real x", "display before (3.6)".into()),
            FnId::W1 => ("all real x", "proof of Theorem 1.1, Step 1".into()),
            FnId::Aux(i) => ("x >= 1", format!("Appendix, f_{i} (Props 5.1-5.13)")),
            FnId::Lemma21 => ("x >= 2.11", "Lemma 2.1, (2.3)".into()),
            FnId::GridG1 => ("0 <= t0 <= t1 <= 7", "proof of Theorem 1.1, Step 1".into()),
            FnId::GridH1 => ("0 <= t0 <= t1 <= 8", "proof of Theorem 1.1, Step 2".into()),
            FnId::Alpha => ("3.05 <= t0 <= t1 <= 7", "proof of Theorem 1.2, Step 1".into()),
            FnId::Beta => ("3.05 <= t0 <= t1 <= 7", "proof of Theorem 1.2, Step 2".into()),
            FnId::Gamma => ("3.05 <= t0 <= t1 <= 7", "proof of Theorem 1.2, Step 3".into()),
            FnId::R => ("0.7 <= t0 <= t1 <= 3.5", "Appendix, Prop 5.9".into()),
            FnId::F0 => ("n >= 2", "(2.1)".into()),
            FnId::F1 => ("n >= 2", "(2.2)".into()),
            FnId::H(i) => ("n >= 2", format!("list after (3.2), H_{i}")),
            FnId::B0 => ("n >= 2, with a0", "(2.11)".into()),
            FnId::B1 => ("n >= 2, with a1", "(3.6)".into()),
        };
        FnInfo {
            id: self.name(),
            arity: self.arity(),
            domain: domain.into(),
            paper_ref,
        }
    }
}

impl fmt::Display for FnId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

pub fn registry() -> Vec<FnInfo> {
    FnId::all().into_iter().map(FnId::info).collect()
}

pub fn registry_json() -> String {
    serde_json::to_string_pretty(&registry()).expect("registry serializes")
}

fn wrong_arity(id: FnId, want: Arity) -> Error {
    Error::arg(format!("{id} is {:?}, not {want:?}", id.arity()).to_lowercase())
}

pub fn eval_univariate<T: Real>(id: FnId, x: &T) -> Result<T> {
    match id {
        FnId::Phi => fx::phi(x),
        FnId::G0 => Ok(fx::g0(x)),
        FnId::G1 => Ok(fx::g1_univariate(x)),
        FnId::W1 => Ok(fx::w1(x)),
        FnId::Aux(i) => fx::f(i, x),
        FnId::Lemma21 => Ok(fx::lemma21(x)),
        _ => Err(wrong_arity(id, Arity::Univariate)),
    }
}

pub fn eval_bivariate<T: Real>(id: FnId, x: &T, t: &T) -> Result<T> {
    match id {
        FnId::GridG1 => Ok(fx::g1(x, t)),
        FnId::GridH1 => Ok(fx::h1(x, t)),
        FnId::Alpha => Ok(fx::alpha(x, t)),
        FnId::Beta => Ok(fx::beta(x, t)),
        FnId::Gamma => Ok(fx::gamma(x, t)),
        FnId::R => fx::r(x, t),
        _ => Err(wrong_arity(id, Arity::Bivariate)),
    }
}

/// Evaluates a point function; `b0`/`b1` need their step parameter.
pub fn eval_at_point<T: Real>(id: FnId, v: &Vars<T>, step: Option<&StepParam>) -> Result<T> {
    let need = || Error::arg(format!("{id} needs a step parameter"));
    match id {
        FnId::F0 => Ok(point::f0(v)),
        FnId::F1 => Ok(point::f1(v)),
        FnId::H(i) => Ok(point::h(i, v)),
        FnId::B0 => Ok(point::b0(v, step.ok_or_else(need)?)),
        FnId::B1 => Ok(point::b1(v, step.ok_or_else(need)?)),
        _ => Err(wrong_arity(id, Arity::Point)),
    }
}
