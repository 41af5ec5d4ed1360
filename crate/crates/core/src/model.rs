//! The shortest-path integer program for `src(G)` and the two strategies
//! that solve it: a direct minimization seeded by the heuristic bound, and
//! a bottom-up sequence of feasibility problems starting at the lower bound.
//!
//! Variables are `x_e{e}_k{k}` (edge `e` gets color `k`), `y_p{p}` (path `p`
//! is rainbow) and `z_k{k}` (color `k` is used). Rows come in families
//! `assign`, `rainbow`, `cover`, `link`, `sym` and the optional `cut`.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::auxiliary::{lower_bound_from, maximal_cliques, AuxiliaryGraph, CliqueCertificate, LowerBound};
use crate::coloring::{verify_strong_rainbow, Coloring};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, VertexId};
use crate::heuristic::{default_max_iter, run_heuristic_with};
use crate::mip::{solve_exhaustive, ExternalSolver, NeutralModel, Sense, SolveStatus, VarId};
use crate::mip::DEFAULT_EXHAUSTIVE_GUARD;
use crate::paths::{PairTable, ShortestPath, DEFAULT_PATH_BUDGET};
use crate::report::{RoundLog, SolveReport, StatsRow};

/// Default cap on the number of maximal cliques turned into cuts.
pub const DEFAULT_CUT_CAP: usize = 50;

/// One pair removed by elimination, with the retained pair and separating
/// vertex that justify it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Elimination {
    pub pair: (VertexId, VertexId),
    pub witness: (VertexId, VertexId),
    pub separator: VertexId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RetainedPairs {
    /// Indexed like [`PairTable::records`].
    pub retained: Vec<bool>,
    pub log: Vec<Elimination>,
}

impl RetainedPairs {
    pub fn all(table: &PairTable) -> Self {
        RetainedPairs {
            retained: vec![true; table.records().len()],
            log: Vec::new(),
        }
    }

    pub fn count(&self) -> usize {
        self.retained.iter().filter(|&&r| r).count()
    }

    /// Number of shortest paths belonging to retained pairs.
    pub fn path_count(&self, table: &PairTable) -> u128 {
        table
            .records()
            .iter()
            .zip(&self.retained)
            .filter(|(_, &keep)| keep)
            .fold(0u128, |acc, (r, _)| acc.saturating_add(r.path_count))
    }
}

/// Drops every pair `(v1, u)` or `(u, v2)` where `u` separates a retained
/// pair `(v1, v2)`: a rainbow shortest `(v1, v2)`-path passes through `u`
/// and contains rainbow shortest paths for both halves.
///
/// Pairs are visited by decreasing distance, so a witness is always decided
/// before the pairs it eliminates.
pub fn compute_retained_pairs(table: &PairTable) -> RetainedPairs {
    let records = table.records();
    let mut order: Vec<usize> = (0..records.len()).collect();
    order.sort_by_key(|&i| {
        let (a, b) = records[i].pair;
        std::cmp::Reverse(table.distance(a, b))
    });
    let mut retained = vec![true; records.len()];
    let mut log = Vec::new();
    for i in order {
        if !retained[i] {
            continue;
        }
        let (v1, v2) = records[i].pair;
        for &u in &records[i].vertices {
            for (a, b) in [(v1, u), (u, v2)] {
                let j = table.pair_index(a, b);
                if retained[j] {
                    retained[j] = false;
                    log.push(Elimination {
                        pair: (a.min(b), a.max(b)),
                        witness: (v1, v2),
                        separator: u,
                    });
                }
            }
        }
    }
    RetainedPairs { retained, log }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelOptions {
    pub eliminate: bool,
    /// Clique whose `i`-th edge is fixed to color `i + 1`.
    pub clique_fix: Option<CliqueCertificate>,
    pub symmetry: bool,
    /// Edge sets receiving one `at most one edge per color` row per color.
    pub cuts: Vec<Vec<EdgeId>>,
    /// Constant objective instead of minimizing the number of colors.
    pub feasibility: bool,
    pub path_budget: u128,
}

impl Default for ModelOptions {
    fn default() -> Self {
        ModelOptions {
            eliminate: false,
            clique_fix: None,
            symmetry: true,
            cuts: Vec::new(),
            feasibility: false,
            path_budget: DEFAULT_PATH_BUDGET,
        }
    }
}

/// Size figures of a built model.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelStats {
    pub k0: usize,
    pub pairs: usize,
    pub pairs_retained: usize,
    pub paths: u128,
    pub paths_retained: u128,
    pub variables: usize,
    pub rows: usize,
    pub fixed: usize,
    pub cut_rows: usize,
}

#[derive(Debug, Clone)]
pub struct IpModel {
    k0: usize,
    model: NeutralModel,
    x: Vec<Vec<VarId>>,
    y: Vec<VarId>,
    z: Vec<VarId>,
    paths: Vec<ShortestPath>,
    /// Retained pairs with the range of their paths in `paths`.
    pairs: Vec<((VertexId, VertexId), std::ops::Range<usize>)>,
    fixed_colors: Vec<Option<usize>>,
    feasibility: bool,
    symmetry: bool,
    stats: ModelStats,
}

impl IpModel {
    pub fn build(g: &Graph, table: &PairTable, k0: usize, opts: &ModelOptions) -> Result<Self> {
        if k0 == 0 {
            return Err(Error::InvalidParameter("color budget must be positive".into()));
        }
        let retained = if opts.eliminate {
            compute_retained_pairs(table)
        } else {
            RetainedPairs::all(table)
        };
        let needed = table
            .records()
            .iter()
            .zip(&retained.retained)
            .filter(|(_, &keep)| keep)
            .fold(0u128, |acc, (r, _)| {
                let d = table.distance(r.pair.0, r.pair.1) as u128;
                acc.saturating_add(r.path_count.saturating_mul(d))
            });
        if needed > opts.path_budget {
            return Err(Error::PathBudgetExceeded {
                needed,
                budget: opts.path_budget,
            });
        }

        let m = g.m();
        let mut model = NeutralModel::new();
        let x: Vec<Vec<VarId>> = (0..m)
            .map(|e| (1..=k0).map(|k| model.add_var(format!("x_e{e}_k{k}"))).collect())
            .collect();

        let mut paths = Vec::new();
        let mut pairs = Vec::new();
        for (r, _) in table.records().iter().zip(&retained.retained).filter(|(_, &k)| k) {
            let (u, v) = r.pair;
            let start = paths.len();
            paths.extend(crate::paths::enumerate_shortest_paths(g, u, v, u128::MAX)?);
            pairs.push(((u, v), start..paths.len()));
        }
        let y: Vec<VarId> = (0..paths.len()).map(|p| model.add_var(format!("y_p{p}"))).collect();
        let z: Vec<VarId> = (1..=k0).map(|k| model.add_var(format!("z_k{k}"))).collect();

        for (e, xs) in x.iter().enumerate() {
            model.add_row(format!("assign_e{e}"), xs.iter().map(|&v| (v, 1)).collect(), Sense::Eq, 1);
        }
        for (p, path) in paths.iter().enumerate() {
            let len = path.len() as i64;
            for k in 0..k0 {
                let mut terms: Vec<(VarId, i64)> = path.edges().iter().map(|&e| (x[e][k], 1)).collect();
                if len > 1 {
                    terms.push((y[p], len - 1));
                }
                model.add_row(format!("rainbow_p{p}_k{}", k + 1), terms, Sense::Le, len);
            }
        }
        for ((u, v), range) in &pairs {
            let terms = range.clone().map(|p| (y[p], 1)).collect();
            model.add_row(format!("cover_{u}_{v}"), terms, Sense::Ge, 1);
        }
        for (e, xs) in x.iter().enumerate() {
            for (k, &xv) in xs.iter().enumerate() {
                model.add_row(format!("link_e{e}_k{}", k + 1), vec![(xv, 1), (z[k], -1)], Sense::Le, 0);
            }
        }
        if opts.symmetry {
            for k in 0..k0 - 1 {
                model.add_row(format!("sym_k{}", k + 1), vec![(z[k], 1), (z[k + 1], -1)], Sense::Ge, 0);
            }
        }
        let mut cut_rows = 0;
        for (c, cut) in opts.cuts.iter().enumerate() {
            for k in 0..k0 {
                let terms = cut.iter().map(|&e| (x[e][k], 1)).collect();
                model.add_row(format!("cut_c{c}_k{}", k + 1), terms, Sense::Le, 1);
                cut_rows += 1;
            }
        }

        let mut fixed_colors = vec![None; m];
        if let Some(clique) = &opts.clique_fix {
            if clique.size() > k0 {
                return Err(Error::InvalidParameter(format!(
                    "clique of size {} does not fit {k0} colors",
                    clique.size()
                )));
            }
            for (i, &e) in clique.edges.iter().enumerate() {
                for k in 0..k0 {
                    model.fix(x[e][k], k == i);
                }
                fixed_colors[e] = Some(i + 1);
            }
            for &zv in &z[..clique.size()] {
                model.fix(zv, true);
            }
        }
        if !opts.feasibility {
            model.set_objective(z.iter().map(|&v| (v, 1)).collect());
        }

        let stats = ModelStats {
            k0,
            pairs: table.records().len(),
            pairs_retained: retained.count(),
            paths: table.total_paths(),
            paths_retained: paths.len() as u128,
            variables: model.var_count(),
            rows: model.row_count(),
            fixed: model.fixed_count(),
            cut_rows,
        };
        Ok(IpModel {
            k0,
            model,
            x,
            y,
            z,
            paths,
            pairs,
            fixed_colors,
            feasibility: opts.feasibility,
            symmetry: opts.symmetry,
            stats,
        })
    }

    pub fn k0(&self) -> usize {
        self.k0
    }

    pub fn neutral(&self) -> &NeutralModel {
        &self.model
    }

    pub fn stats(&self) -> &ModelStats {
        &self.stats
    }

    pub fn is_feasibility(&self) -> bool {
        self.feasibility
    }

    pub fn has_symmetry_rows(&self) -> bool {
        self.symmetry
    }

    pub fn x(&self, e: EdgeId, k: usize) -> VarId {
        self.x[e][k - 1]
    }

    pub fn y(&self, p: usize) -> VarId {
        self.y[p]
    }

    pub fn z(&self, k: usize) -> VarId {
        self.z[k - 1]
    }

    pub fn paths(&self) -> &[ShortestPath] {
        &self.paths
    }

    /// Retained pairs in model order.
    pub fn retained_pairs(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.pairs.iter().map(|(p, _)| *p)
    }

    pub(crate) fn pair_paths(&self) -> Vec<Vec<Vec<EdgeId>>> {
        self.pairs
            .iter()
            .map(|(_, range)| self.paths[range.clone()].iter().map(|p| p.edges().to_vec()).collect())
            .collect()
    }

    pub(crate) fn fixed_colors(&self) -> &[Option<usize>] {
        &self.fixed_colors
    }

    /// Model point encoding an edge coloring with colors in `1..=k0`.
    pub fn assignment_for(&self, colors: &[usize]) -> Vec<bool> {
        let mut a = vec![false; self.model.var_count()];
        let mut used = vec![false; self.k0 + 1];
        for (e, &c) in colors.iter().enumerate() {
            a[self.x[e][c - 1]] = true;
            used[c] = true;
        }
        for (p, path) in self.paths.iter().enumerate() {
            let mut seen = used.iter().map(|_| false).collect::<Vec<_>>();
            let rainbow = path.edges().iter().all(|&e| !std::mem::replace(&mut seen[colors[e]], true));
            a[self.y[p]] = rainbow;
        }
        for k in 1..=self.k0 {
            a[self.z[k - 1]] = used[k];
        }
        a
    }

    /// Reads the edge coloring off a model point.
    pub fn coloring_from(&self, assignment: &[bool]) -> Result<Coloring> {
        let raw = self
            .x
            .iter()
            .enumerate()
            .map(|(e, xs)| {
                xs.iter()
                    .position(|&v| assignment[v])
                    .map(|k| k + 1)
                    .ok_or_else(|| Error::Backend(format!("edge {e} received no color")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Coloring::compact(&raw))
    }
}

/// Where models get solved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Backend {
    External(ExternalSolver),
    /// Exact coloring search for graphs with at most `guard` edges.
    Exhaustive { guard: usize },
}

impl Backend {
    /// `SRC_SOLVER_CMD` when set, otherwise the exhaustive search.
    pub fn from_env() -> Result<Self> {
        match ExternalSolver::from_env() {
            Some(solver) => Ok(Backend::External(solver?)),
            None => Ok(Backend::Exhaustive {
                guard: DEFAULT_EXHAUSTIVE_GUARD,
            }),
        }
    }

    pub fn solve(&self, ip: &IpModel, time_limit: Option<Duration>) -> Result<SolveStatus> {
        match self {
            Backend::External(solver) => solver.solve(ip.neutral(), time_limit),
            Backend::Exhaustive { guard } => solve_exhaustive(ip, *guard),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Backend::External(_) => "external",
            Backend::Exhaustive { .. } => "exhaustive",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Naive,
    Enhanced,
    BottomUp,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Naive => "naive",
            Method::Enhanced => "enhanced",
            Method::BottomUp => "bottom_up",
        }
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "naive" => Ok(Method::Naive),
            "enhanced" => Ok(Method::Enhanced),
            "bottom_up" | "bottomup" => Ok(Method::BottomUp),
            other => Err(Error::InvalidParameter(format!("unknown method {other}"))),
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOptions {
    pub method: Method,
    pub time_limit: Option<Duration>,
    pub seed: u64,
    /// Heuristic iterations; `ceil(n / 5)` when unset.
    pub max_iter: Option<usize>,
    pub eliminate: bool,
    pub clique_fix: bool,
    pub symmetry: bool,
    pub clique_cuts: bool,
    pub cut_cap: usize,
    pub path_budget: u128,
    /// Bottom-up rounds drop the objective and only ask for feasibility.
    pub feasibility_rounds: bool,
    /// Time allowed for the maximum clique search.
    pub clique_time_limit: Option<Duration>,
}

impl SolveOptions {
    /// Defaults for `method`: the naive model has no enhancements, the other
    /// two use elimination and clique fixing.
    pub fn for_method(method: Method) -> Self {
        let enhanced = method != Method::Naive;
        SolveOptions {
            method,
            time_limit: Some(Duration::from_secs(3600)),
            seed: 0,
            max_iter: None,
            eliminate: enhanced,
            clique_fix: enhanced,
            symmetry: true,
            clique_cuts: false,
            cut_cap: DEFAULT_CUT_CAP,
            path_budget: DEFAULT_PATH_BUDGET,
            feasibility_rounds: true,
            clique_time_limit: None,
        }
    }

    fn model_options(&self, bound: &LowerBound, h: &AuxiliaryGraph, feasibility: bool) -> ModelOptions {
        let mut cuts = Vec::new();
        if self.clique_cuts {
            cuts.push(bound.clique.edges.clone());
            for c in maximal_cliques(h, self.cut_cap) {
                if !cuts.contains(&c) {
                    cuts.push(c);
                }
            }
        }
        ModelOptions {
            eliminate: self.eliminate,
            clique_fix: self.clique_fix.then(|| bound.clique.clone()),
            symmetry: self.symmetry,
            cuts,
            feasibility,
            path_budget: self.path_budget,
        }
    }
}

struct Prepared {
    table: PairTable,
    h: AuxiliaryGraph,
    bound: LowerBound,
    bound_time: f64,
}

fn prepare(g: &Graph, opts: &SolveOptions) -> Prepared {
    let start = Instant::now();
    let table = PairTable::build(g);
    let h = AuxiliaryGraph::from_table(g, &table);
    let bound = lower_bound_from(g, &h, opts.clique_time_limit);
    Prepared {
        table,
        h,
        bound,
        bound_time: start.elapsed().as_secs_f64(),
    }
}

fn remaining(limit: Option<Duration>, start: Instant) -> Option<Duration> {
    limit.map(|l| l.saturating_sub(start.elapsed()))
}

fn out_of_time(limit: Option<Duration>, start: Instant) -> bool {
    remaining(limit, start).is_some_and(|d| d.is_zero())
}

fn checked_coloring(g: &Graph, ip: &IpModel, assignment: &[bool]) -> Result<Coloring> {
    let coloring = ip.coloring_from(assignment)?;
    if !verify_strong_rainbow(g, &coloring)?.is_valid() {
        return Err(Error::InvalidColoring(
            "solver returned a coloring that is not strongly rainbow connected".into(),
        ));
    }
    Ok(coloring)
}

fn new_report(g: &Graph, prep: &Prepared, method: Method) -> SolveReport {
    SolveReport {
        instance: String::new(),
        method,
        n: g.n(),
        m: g.m(),
        solved: false,
        src: None,
        lower: prep.bound.value,
        upper: None,
        init_lb: prep.bound.value,
        diameter: prep.bound.diameter,
        omega_prime: prep.bound.omega_prime,
        omega_exact: prep.bound.clique.exact,
        density_h: prep.h.density(),
        heuristic_ub: None,
        heuristic_time: None,
        bound_time: prep.bound_time,
        build_time: 0.0,
        solve_time: 0.0,
        total_time: 0.0,
        rounds: Vec::new(),
        model: ModelStats::default(),
        coloring: None,
    }
}

/// Minimizes the number of colors with `K0` set to the heuristic bound.
pub fn solve_direct(g: &Graph, backend: &Backend, opts: &SolveOptions) -> Result<SolveReport> {
    let start = Instant::now();
    let prep = prepare(g, opts);
    let mut report = new_report(g, &prep, opts.method);

    let heur_start = Instant::now();
    let max_iter = opts.max_iter.unwrap_or_else(|| default_max_iter(g.n()));
    let heuristic = run_heuristic_with(g, &prep.table, max_iter, opts.seed, None);
    let heuristic_time = heur_start.elapsed().as_secs_f64();
    report.heuristic_ub = Some(heuristic.best);
    report.heuristic_time = Some(heuristic_time);
    report.upper = Some(heuristic.best);

    let build_start = Instant::now();
    let model_opts = opts.model_options(&prep.bound, &prep.h, false);
    let ip = IpModel::build(g, &prep.table, heuristic.best, &model_opts)?;
    report.model = ip.stats().clone();
    report.build_time = build_start.elapsed().as_secs_f64();

    let solve_start = Instant::now();
    let status = if out_of_time(opts.time_limit, start) {
        SolveStatus::TimeLimit {
            bound: None,
            incumbent: None,
        }
    } else {
        backend.solve(&ip, remaining(opts.time_limit, start))?
    };
    report.solve_time = solve_start.elapsed().as_secs_f64();
    report.rounds.push(RoundLog {
        k0: ip.k0(),
        status: status.label().to_string(),
        time: report.solve_time,
    });

    let mut best = heuristic.coloring;
    match status {
        SolveStatus::Optimal { objective, assignment } => {
            let coloring = checked_coloring(g, &ip, &assignment)?;
            if coloring.k() as i64 != objective {
                return Err(Error::Backend(format!(
                    "objective {objective} disagrees with {} colors in the solution",
                    coloring.k()
                )));
            }
            best = coloring;
            report.lower = best.k();
        }
        SolveStatus::Feasible { assignment, .. } | SolveStatus::TimeLimit { incumbent: Some((_, assignment)), bound: None } => {
            let coloring = checked_coloring(g, &ip, &assignment)?;
            if coloring.k() < best.k() {
                best = coloring;
            }
        }
        SolveStatus::TimeLimit { bound, incumbent } => {
            if let Some(b) = bound {
                report.lower = report.lower.max((b - 1e-6).ceil().max(0.0) as usize);
            }
            if let Some((_, assignment)) = incumbent {
                let coloring = checked_coloring(g, &ip, &assignment)?;
                if coloring.k() < best.k() {
                    best = coloring;
                }
            }
        }
        SolveStatus::Infeasible => {
            return Err(Error::Backend(format!(
                "model reported infeasible with {} colors, which the heuristic achieves",
                ip.k0()
            )))
        }
        SolveStatus::Error(msg) => return Err(Error::Backend(msg)),
    }
    report.upper = Some(best.k());
    if best.k() <= report.lower {
        report.mark_solved(best);
    } else {
        report.coloring = Some(best);
    }
    report.total_time = start.elapsed().as_secs_f64();
    if opts.method == Method::Naive {
        // the naive model never uses the lower bound
        report.total_time -= prep.bound_time;
    }
    Ok(report)
}

/// Solves feasibility problems for `K0 = lb, lb + 1, ...` until one is
/// feasible.
pub fn solve_bottom_up(g: &Graph, backend: &Backend, opts: &SolveOptions) -> Result<SolveReport> {
    let start = Instant::now();
    let prep = prepare(g, opts);
    let mut report = new_report(g, &prep, Method::BottomUp);
    let model_opts = opts.model_options(&prep.bound, &prep.h, opts.feasibility_rounds);

    let mut k0 = prep.bound.value;
    while k0 <= g.m() {
        if out_of_time(opts.time_limit, start) {
            break;
        }
        let build_start = Instant::now();
        let ip = IpModel::build(g, &prep.table, k0, &model_opts)?;
        report.model = ip.stats().clone();
        report.build_time += build_start.elapsed().as_secs_f64();

        let round_start = Instant::now();
        let status = backend.solve(&ip, remaining(opts.time_limit, start))?;
        let elapsed = round_start.elapsed().as_secs_f64();
        report.solve_time += elapsed;
        report.rounds.push(RoundLog {
            k0,
            status: status.label().to_string(),
            time: elapsed,
        });
        log::info!("bottom-up K0={k0}: {}", status.label());

        match status {
            SolveStatus::Infeasible => {
                k0 += 1;
                report.lower = k0;
            }
            SolveStatus::Optimal { assignment, .. }
            | SolveStatus::Feasible { assignment, .. }
            | SolveStatus::TimeLimit {
                incumbent: Some((_, assignment)),
                ..
            } => {
                let coloring = checked_coloring(g, &ip, &assignment)?;
                if coloring.k() != k0 {
                    return Err(Error::Backend(format!(
                        "feasible point at K0={k0} uses {} colors, contradicting infeasibility below",
                        coloring.k()
                    )));
                }
                report.mark_solved(coloring);
                break;
            }
            SolveStatus::TimeLimit { incumbent: None, .. } => break,
            SolveStatus::Error(msg) => return Err(Error::Backend(msg)),
        }
    }
    report.total_time = start.elapsed().as_secs_f64();
    Ok(report)
}

/// Dispatches on `opts.method`.
pub fn solve(g: &Graph, backend: &Backend, opts: &SolveOptions) -> Result<SolveReport> {
    match opts.method {
        Method::BottomUp => solve_bottom_up(g, backend, opts),
        Method::Naive | Method::Enhanced => solve_direct(g, backend, opts),
    }
}

/// Instance statistics: bound parts, density of the auxiliary graph and
/// path counts before and after elimination.
pub fn instance_stats(g: &Graph, path_budget: u128) -> Result<StatsRow> {
    let table = PairTable::build(g);
    let needed = table.path_edge_incidences();
    if needed > path_budget {
        return Err(Error::PathBudgetExceeded {
            needed,
            budget: path_budget,
        });
    }
    let h = AuxiliaryGraph::from_table(g, &table);
    let bound = lower_bound_from(g, &h, None);
    let retained = compute_retained_pairs(&table);
    let paths = table.total_paths();
    let remaining = retained.path_count(&table);
    let (mut paths_d2, mut remaining_d2) = (0u128, 0u128);
    for (r, &keep) in table.records().iter().zip(&retained.retained) {
        if table.distance(r.pair.0, r.pair.1) >= 2 {
            paths_d2 = paths_d2.saturating_add(r.path_count);
            if keep {
                remaining_d2 = remaining_d2.saturating_add(r.path_count);
            }
        }
    }
    let pct = |part: u128, whole: u128| if whole == 0 { 100.0 } else { 100.0 * part as f64 / whole as f64 };
    let n = g.n();
    Ok(StatsRow {
        instance: String::new(),
        n,
        m: g.m(),
        omega_prime: bound.omega_prime,
        diameter: bound.diameter,
        density_pct: 100.0 * h.density(),
        paths,
        paths_remaining: remaining,
        pct_remaining: pct(remaining, paths),
        density_g_pct: 100.0 * g.m() as f64 / (n * (n - 1) / 2) as f64,
        paths_d2,
        paths_d2_remaining: remaining_d2,
        pct_d2_remaining: pct(remaining_d2, paths_d2),
    })
}
