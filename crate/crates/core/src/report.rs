//! Solve reports and their JSON and CSV renderings.

use serde::{Deserialize, Serialize};

use crate::coloring::Coloring;
use crate::model::{Method, ModelStats};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoundLog {
    pub k0: usize,
    pub status: String,
    pub time: f64,
}

/// Outcome of one solve. Times are wall-clock seconds.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolveReport {
    pub instance: String,
    pub method: Method,
    pub n: usize,
    pub m: usize,
    pub solved: bool,
    pub src: Option<usize>,
    /// Best proven bounds; equal to `src` when solved.
    pub lower: usize,
    pub upper: Option<usize>,
    pub init_lb: usize,
    pub diameter: usize,
    pub omega_prime: usize,
    pub omega_exact: bool,
    pub density_h: f64,
    pub heuristic_ub: Option<usize>,
    pub heuristic_time: Option<f64>,
    pub bound_time: f64,
    pub build_time: f64,
    pub solve_time: f64,
    /// Method time: includes the heuristic for direct solves, never for
    /// bottom-up.
    pub total_time: f64,
    pub rounds: Vec<RoundLog>,
    pub model: ModelStats,
    #[serde(skip)]
    pub coloring: Option<Coloring>,
}

pub const REPORT_CSV_HEADER: &str =
    "instance,n,m,method,src,init_lb,heur_ub,heur_time,time,omega_prime,diam,dens_h,paths,paths_rem,pct_rem";

impl SolveReport {
    pub(crate) fn mark_solved(&mut self, coloring: Coloring) {
        let k = coloring.k();
        self.solved = true;
        self.src = Some(k);
        self.lower = k;
        self.upper = Some(k);
        self.coloring = Some(coloring);
    }

    pub fn with_instance(mut self, name: impl Into<String>) -> Self {
        self.instance = name.into();
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Time when solved, otherwise the `[lb,ub]` bracket with `-` for a
    /// missing upper bound.
    pub fn time_cell(&self) -> String {
        if self.solved {
            format!("{:.3}", self.total_time)
        } else {
            let ub = self.upper.map_or("-".to_string(), |u| u.to_string());
            format!("\"[{},{}]\"", self.lower, ub)
        }
    }

    pub fn csv_row(&self) -> String {
        let pct = if self.model.paths == 0 {
            100.0
        } else {
            100.0 * self.model.paths_retained as f64 / self.model.paths as f64
        };
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{:.2},{},{},{:.2}",
            self.instance,
            self.n,
            self.m,
            self.method,
            self.src.map_or("-".to_string(), |s| s.to_string()),
            self.init_lb,
            self.heuristic_ub.map_or("-".to_string(), |s| s.to_string()),
            self.heuristic_time.map_or("-".to_string(), |t| format!("{t:.3}")),
            self.time_cell(),
            self.omega_prime,
            self.diameter,
            100.0 * self.density_h,
            self.model.paths,
            self.model.paths_retained,
            pct,
        )
    }
}

/// One line of the instance statistics table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatsRow {
    pub instance: String,
    pub n: usize,
    pub m: usize,
    pub omega_prime: usize,
    pub diameter: usize,
    pub density_pct: f64,
    pub paths: u128,
    pub paths_remaining: u128,
    pub pct_remaining: f64,
    /// Edge density of G itself, in percent.
    pub density_g_pct: f64,
    /// Path counts restricted to pairs at distance two or more.
    pub paths_d2: u128,
    pub paths_d2_remaining: u128,
    pub pct_d2_remaining: f64,
}

pub const STATS_CSV_HEADER: &str =
    "instance,n,m,omega_prime,diam,dens_h,paths,paths_rem,pct_rem,dens_g,paths_d2,paths_d2_rem,pct_rem_d2";

impl StatsRow {
    pub fn with_instance(mut self, name: impl Into<String>) -> Self {
        self.instance = name.into();
        self
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{:.2},{},{},{:.2},{:.2},{},{},{:.2}",
            self.instance,
            self.n,
            self.m,
            self.omega_prime,
            self.diameter,
            self.density_pct,
            self.paths,
            self.paths_remaining,
            self.pct_remaining,
            self.density_g_pct,
            self.paths_d2,
            self.paths_d2_remaining,
            self.pct_d2_remaining
        )
    }
}
