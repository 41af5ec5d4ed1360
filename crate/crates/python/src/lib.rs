//! Python bindings for the strong rainbow connection solver.

use std::time::Duration;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use rainbow_core::generators;
use rainbow_core::mip::ExternalSolver;
use rainbow_core::model::{instance_stats, solve as solve_model, Backend};
use rainbow_core::paths::DEFAULT_PATH_BUDGET;
use rainbow_core::{Coloring, Error, Method, SolveOptions, Verdict};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::InvalidParameter(_)
        | Error::MalformedLine { .. }
        | Error::EmptyGraph
        | Error::InvalidVertex(_)
        | Error::InvalidColoring(_) => PyValueError::new_err(e.to_string()),
        other => PyRuntimeError::new_err(other.to_string()),
    }
}

/// A simple connected undirected graph.
#[pyclass(frozen, module = "strong_rainbow")]
struct Graph {
    inner: rainbow_core::Graph,
}

#[pymethods]
impl Graph {
    /// Builds a graph on vertices `0..n`; keeps the largest component.
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        let inner = rainbow_core::Graph::from_edges(n, &edges).map_err(to_py)?;
        Ok(Graph { inner })
    }

    /// Parses whitespace-separated edge-list text.
    #[staticmethod]
    fn from_edge_list(text: &str) -> PyResult<Self> {
        let inner = rainbow_core::parse_edge_list(text).map_err(to_py)?;
        Ok(Graph { inner })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    /// Edges as pairs of vertex ids in canonical order.
    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().to_vec()
    }

    fn labels(&self) -> Vec<String> {
        self.inner.labels().to_vec()
    }

    fn diameter(&self) -> usize {
        self.inner.diameter()
    }

    fn is_geodetic(&self) -> bool {
        rainbow_core::is_geodetic(&self.inner)
    }

    fn canonical_hash(&self) -> String {
        self.inner.canonical_hash()
    }

    fn to_edge_list(&self) -> String {
        self.inner.to_edge_list()
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, m={})", self.inner.n(), self.inner.m())
    }
}

/// Returns `{"value", "diameter", "omega_prime", "clique", "exact"}`.
#[pyfunction]
fn lower_bound<'py>(py: Python<'py>, g: &Graph) -> PyResult<Bound<'py, PyDict>> {
    let lb = rainbow_core::lower_bound(&g.inner);
    let d = PyDict::new(py);
    d.set_item("value", lb.value)?;
    d.set_item("diameter", lb.diameter)?;
    d.set_item("omega_prime", lb.omega_prime)?;
    d.set_item("clique", lb.clique.edges.clone())?;
    d.set_item("exact", lb.clique.exact)?;
    Ok(d)
}

/// Exact chromatic number of the auxiliary graph (small instances only).
#[pyfunction]
#[pyo3(signature = (g, guard=128, time_limit=None))]
fn chromatic_number(g: &Graph, guard: usize, time_limit: Option<f64>) -> PyResult<usize> {
    let h = rainbow_core::AuxiliaryGraph::build(&g.inner);
    rainbow_core::chromatic_number_exact(&h, guard, time_limit.map(Duration::from_secs_f64)).map_err(to_py)
}

/// Runs the randomized heuristic; returns `(colors_used, per_edge_colors)`.
#[pyfunction]
#[pyo3(signature = (g, max_iter=None, seed=0, seed_clique=false))]
fn heuristic(g: &Graph, max_iter: Option<usize>, seed: u64, seed_clique: bool) -> (usize, Vec<usize>) {
    let clique = seed_clique.then(|| rainbow_core::lower_bound(&g.inner).clique);
    let iters = max_iter.unwrap_or_else(|| rainbow_core::heuristic::default_max_iter(g.inner.n()));
    let r = rainbow_core::run_heuristic(&g.inner, iters, seed, clique.as_ref());
    (r.best, r.coloring.colors().to_vec())
}

/// `None` if the per-edge colors strongly rainbow connect `g`, otherwise a
/// vertex pair without a rainbow shortest path.
#[pyfunction]
fn verify(g: &Graph, colors: Vec<usize>) -> PyResult<Option<(usize, usize)>> {
    if colors.len() != g.inner.m() {
        return Err(PyValueError::new_err(format!(
            "expected {} colors, got {}",
            g.inner.m(),
            colors.len()
        )));
    }
    let c = Coloring::new(colors).map_err(to_py)?;
    match rainbow_core::verify_strong_rainbow(&g.inner, &c).map_err(to_py)? {
        Verdict::Valid => Ok(None),
        Verdict::Invalid { pair } => Ok(Some(pair)),
    }
}

/// `src(G)` by exhaustive search.
#[pyfunction]
#[pyo3(signature = (g, k_max=None))]
fn brute_force_src(g: &Graph, k_max: Option<usize>) -> PyResult<usize> {
    rainbow_core::brute_force_src(&g.inner, k_max.unwrap_or(g.inner.m())).map_err(to_py)
}

/// Solves for `src(G)`. Without `solver_cmd` the exhaustive backend is used.
#[pyfunction]
#[pyo3(signature = (g, method="bottom-up", solver_cmd=None, time_limit=3600.0, seed=0, exhaustive_guard=14))]
fn solve<'py>(
    py: Python<'py>,
    g: &Graph,
    method: &str,
    solver_cmd: Option<&str>,
    time_limit: f64,
    seed: u64,
    exhaustive_guard: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let method: Method = method.parse().map_err(to_py)?;
    let backend = match solver_cmd {
        Some(cmd) => Backend::External(ExternalSolver::new(cmd).map_err(to_py)?),
        None => Backend::Exhaustive {
            guard: exhaustive_guard,
        },
    };
    let mut opts = SolveOptions::for_method(method);
    opts.time_limit = Some(Duration::from_secs_f64(time_limit));
    opts.seed = seed;
    let report = py
        .detach(|| solve_model(&g.inner, &backend, &opts))
        .map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item("src", report.src)?;
    d.set_item("lower", report.lower)?;
    d.set_item("upper", report.upper)?;
    d.set_item("init_lb", report.init_lb)?;
    d.set_item("heuristic_ub", report.heuristic_ub)?;
    d.set_item("time", report.total_time)?;
    d.set_item("colors", report.coloring.map(|c| c.colors().to_vec()))?;
    Ok(d)
}

/// Table-style statistics: bound parts, density of H, path counts.
#[pyfunction]
fn stats<'py>(py: Python<'py>, g: &Graph) -> PyResult<Bound<'py, PyDict>> {
    let s = instance_stats(&g.inner, DEFAULT_PATH_BUDGET).map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item("n", s.n)?;
    d.set_item("m", s.m)?;
    d.set_item("omega_prime", s.omega_prime)?;
    d.set_item("diameter", s.diameter)?;
    d.set_item("density_pct", s.density_pct)?;
    d.set_item("paths", s.paths)?;
    d.set_item("paths_remaining", s.paths_remaining)?;
    d.set_item("pct_remaining", s.pct_remaining)?;
    d.set_item("density_g_pct", s.density_g_pct)?;
    d.set_item("paths_d2", s.paths_d2)?;
    d.set_item("paths_d2_remaining", s.paths_d2_remaining)?;
    d.set_item("pct_d2_remaining", s.pct_d2_remaining)?;
    Ok(d)
}

#[pyfunction]
#[pyo3(signature = (n, p, seed=0, index=0))]
fn gen_er(n: usize, p: f64, seed: u64, index: u64) -> PyResult<Graph> {
    let inner = generators::gen_er(n, p, seed, index).map_err(to_py)?;
    Ok(Graph { inner })
}

#[pyfunction]
#[pyo3(signature = (n, k, p, seed=0, index=0))]
fn gen_ws(n: usize, k: usize, p: f64, seed: u64, index: u64) -> PyResult<Graph> {
    let inner = generators::gen_ws(n, k, p, seed, index).map_err(to_py)?;
    Ok(Graph { inner })
}

#[pyfunction]
#[pyo3(signature = (n1, n2, p, seed=0, index=0))]
fn gen_ber(n1: usize, n2: usize, p: f64, seed: u64, index: u64) -> PyResult<Graph> {
    let inner = generators::gen_ber(n1, n2, p, seed, index).map_err(to_py)?;
    Ok(Graph { inner })
}

#[pymodule]
fn strong_rainbow(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Graph>()?;
    m.add_function(wrap_pyfunction!(lower_bound, m)?)?;
    m.add_function(wrap_pyfunction!(chromatic_number, m)?)?;
    m.add_function(wrap_pyfunction!(heuristic, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(brute_force_src, m)?)?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(stats, m)?)?;
    m.add_function(wrap_pyfunction!(gen_er, m)?)?;
    m.add_function(wrap_pyfunction!(gen_ws, m)?)?;
    m.add_function(wrap_pyfunction!(gen_ber, m)?)?;
    Ok(())
}
