//! Grid specifications and the versioned manifest file.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formula_lib::{Arity, FnId};
use crate::numeric::rational::{self, Q};

pub const MANIFEST_VERSION: u32 = 1;

/// The shape that makes a cell check sound: `F(x, x) >= F(t0, t1)` whenever
/// `t0 <= x <= t1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Bracket {
    /// Nondecreasing in the first argument, nonincreasing in the second.
    UpInXDownInT,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub id: String,
    pub fn_id: String,
    #[serde(with = "rational_str")]
    pub x_start: Q,
    #[serde(with = "rational_str")]
    pub step: Q,
    pub cells: u64,
    pub bracket: Bracket,
    pub paper_ref: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub version: u32,
    pub grids: Vec<GridSpec>,
}

/// Where the declared bracket shape holds for each grid function.
pub fn bracket_domain(id: FnId) -> Option<(Q, Q)> {
    let q = |n: i128, d: i128| Q::new(n, d);
    match id {
        FnId::GridG1 | FnId::GridH1 | FnId::Alpha | FnId::Beta | FnId::Gamma => Some((q(0, 1), q(30, 1))),
        FnId::R => Some((q(7, 10), q(30, 1))),
        _ => None,
    }
}

impl GridSpec {
    pub fn new(id: &str, fn_id: FnId, x_start: &str, step: &str, cells: u64, paper_ref: &str) -> Result<Self> {
        let s = GridSpec {
            id: id.into(),
            fn_id: fn_id.name(),
            x_start: rational::parse(x_start)?,
            step: rational::parse(step)?,
            cells,
            bracket: Bracket::UpInXDownInT,
            paper_ref: paper_ref.into(),
        };
        s.validate()?;
        Ok(s)
    }

    pub fn function(&self) -> Result<FnId> {
        FnId::parse(&self.fn_id)
    }

    pub fn x_end(&self) -> Q {
        self.x_start + self.step * Q::from_integer(self.cells as i128)
    }

    /// Left and right end of cell `i`.
    pub fn cell(&self, i: u64) -> (Q, Q) {
        let a = self.x_start + self.step * Q::from_integer(i as i128);
        (a, a + self.step)
    }

    pub fn validate(&self) -> Result<()> {
        let f = self.function()?;
        if f.arity() != Arity::Bivariate {
            return Err(Error::arg(format!("{f} is not a bivariate grid function")));
        }
        if self.cells == 0 || self.step <= Q::from_integer(0) {
            return Err(Error::arg(format!("grid {} needs a positive step and cell count", self.id)));
        }
        let (lo, hi) = bracket_domain(f).expect("every bivariate function has a bracket domain");
        if self.x_start < lo || self.x_end() > hi {
            return Err(Error::arg(format!(
                "grid {} spans [{}, {}], outside the bracket domain [{}, {}] of {f}",
                self.id,
                rational_str::format(&self.x_start),
                rational_str::format(&self.x_end()),
                rational_str::format(&lo),
                rational_str::format(&hi)
            )));
        }
        Ok(())
    }
}

/// The six grids the proofs check by computer.
pub fn paper_grids() -> Vec<GridSpec> {
    let g = |id, f, start, step, cells, r| GridSpec::new(id, f, start, step, cells, r).expect("valid paper grid");
    vec![
        g("paper:g1", FnId::GridG1, "0", "1e-5", 700_000, "Theorem 1.1 proof, Step 1"),
        g("paper:h1", FnId::GridH1, "0", "1e-6", 8_000_000, "Theorem 1.1 proof, Step 2"),
        g("paper:alpha", FnId::Alpha, "3.05", "1e-5", 395_000, "Theorem 1.2 proof, Step 1"),
        g("paper:beta", FnId::Beta, "3.05", "1e-5", 395_000, "Theorem 1.2 proof, Step 2 (grid of Step 1)"),
        g("paper:gamma", FnId::Gamma, "3.05", "1e-5", 395_000, "Theorem 1.2 proof, Step 3 (grid of Step 1)"),
        g("paper:r", FnId::R, "0.7", "1e-3", 2800, "Appendix, Proposition 5.9"),
    ]
}

pub fn paper_grid(id: &str) -> Result<GridSpec> {
    paper_grids()
        .into_iter()
        .find(|g| g.id == id)
        .ok_or_else(|| Error::UnknownId(id.to_string()))
}

impl Manifest {
    pub fn paper() -> Self {
        Manifest { version: MANIFEST_VERSION, grids: paper_grids() }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let m: Manifest = serde_json::from_str(s)?;
        if m.version != MANIFEST_VERSION {
            return Err(Error::Parse(format!("manifest version {} (expected {MANIFEST_VERSION})", m.version)));
        }
        for g in &m.grids {
            g.validate()?;
        }
        Ok(m)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifest serializes")
    }
}

/// Serde adapter storing rationals as strings.
pub mod rational_str {
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    use crate::numeric::rational::{parse, Q};

    pub fn format(q: &Q) -> String {
        crate::numeric::rational::format(q)
    }

    pub fn serialize<S: Serializer>(q: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        parse(&String::deserialize(d)?).map_err(D::Error::custom)
    }
}
