use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::numeric::hexfloat;
use crate::numeric::Interval;

/// Most failing cells kept per report; the count is exact.
pub const FAILURE_CAP: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CellFailure {
    pub cell: u64,
    /// The refined sub-cell with the smallest lower bound.
    pub t0: String,
    pub t1: String,
    pub value: Interval,
    /// The function is certainly negative at `t0`, so the claim itself fails.
    pub counterexample: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MinBound {
    pub cell: u64,
    pub value: Interval,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridReport {
    pub spec_id: String,
    pub fn_id: String,
    pub label: String,
    pub x_start: String,
    pub x_end: String,
    pub cells: u64,
    pub cells_checked: u64,
    pub failure_count: u64,
    pub failures: Vec<CellFailure>,
    /// Smallest certified lower bound over all cells.
    pub min_lower_bound: Option<MinBound>,
    /// Cells that needed 128-bit arithmetic or subdivision.
    pub refined: u64,
    pub max_depth: u32,
    pub wall_time_s: f64,
}

impl GridReport {
    pub(crate) fn merge(&mut self, o: GridReport) {
        self.cells_checked += o.cells_checked;
        self.failure_count += o.failure_count;
        let room = FAILURE_CAP.saturating_sub(self.failures.len());
        self.failures.extend(o.failures.into_iter().take(room));
        if let Some(m) = o.min_lower_bound {
            if self.min_lower_bound.is_none_or(|c| m.value.lo < c.value.lo) {
                self.min_lower_bound = Some(m);
            }
        }
        self.refined += o.refined;
        self.max_depth = self.max_depth.max(o.max_depth);
    }

    pub fn passed(&self) -> bool {
        self.failure_count == 0 && self.cells_checked == self.cells
    }

    pub fn has_counterexample(&self) -> bool {
        self.failures.iter().any(|f| f.counterexample)
    }

    /// 0 every cell certified, 1 a genuine counterexample, 2 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else if self.has_counterexample() {
            1
        } else {
            2
        }
    }

    pub fn without_timing(&self) -> Self {
        GridReport { wall_time_s: 0.0, ..self.clone() }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("kind,grid,cell,t0,t1,value_lo,value_hi,note\n");
        let (mc, ml, mh) = match self.min_lower_bound {
            Some(m) => (m.cell.to_string(), hexfloat::format(m.value.lo), hexfloat::format(m.value.hi)),
            None => Default::default(),
        };
        let _ = writeln!(
            s,
            "summary,{},{mc},{},{},{ml},{mh},cells={} checked={} failures={} refined={} depth={}",
            self.spec_id,
            self.x_start,
            self.x_end,
            self.cells,
            self.cells_checked,
            self.failure_count,
            self.refined,
            self.max_depth
        );
        for f in &self.failures {
            let _ = writeln!(
                s,
                "failure,{},{},{},{},{},{},{}",
                self.spec_id,
                f.cell,
                f.t0,
                f.t1,
                hexfloat::format(f.value.lo),
                hexfloat::format(f.value.hi),
                if f.counterexample { "counterexample" } else { "unresolved" }
            );
        }
        s
    }
}

/// Exit code for several grids: the worst of them.
pub fn combined_exit_code(reports: &[GridReport]) -> i32 {
    reports.iter().map(|r| r.exit_code()).max().unwrap_or(0)
}
