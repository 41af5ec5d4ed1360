//! Shared fixtures for the integration tests: graph families, a shortest-path
//! oracle that works from plain BFS and DFS, and MIP backend discovery.

#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};
use std::path::PathBuf;
use std::process::Command;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rainbow_core::mip::ExternalSolver;
use rainbow_core::model::Backend;
use rainbow_core::{generators, Graph};

pub fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::from_edges(n, edges).expect("valid test graph")
}

pub fn labeled(edges: &[(&str, &str)]) -> Graph {
    let text: String = edges.iter().map(|(a, b)| format!("{a} {b}\n")).collect();
    rainbow_core::parse_edge_list(&text).expect("valid edge list")
}

pub fn path_graph(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    graph(n, &edges)
}

pub fn cycle(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    graph(n, &edges)
}

pub fn star(leaves: usize) -> Graph {
    let edges: Vec<_> = (1..=leaves).map(|l| (0, l)).collect();
    graph(leaves + 1, &edges)
}

pub fn complete_bipartite(s: usize, t: usize) -> Graph {
    let edges: Vec<_> = (0..s).flat_map(|a| (s..s + t).map(move |b| (a, b))).collect();
    graph(s + t, &edges)
}

/// `k + 1` copies of `K_4`, the `i`-th on `v_{2i-1} .. v_{2i+2}`, so
/// consecutive copies share two vertices.
pub fn k4_chain(k: usize) -> Graph {
    let n = 2 * (k + 1) + 2;
    let mut edges = Vec::new();
    for i in 0..=k {
        let base = 2 * i;
        for a in base..base + 4 {
            for b in a + 1..base + 4 {
                edges.push((a, b));
            }
        }
    }
    graph(n, &edges)
}

pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    graph(10, &edges)
}

pub fn random_tree(n: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<_> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    graph(n, &edges)
}

pub fn figure_one() -> Graph {
    labeled(&[
        ("a", "b"),
        ("b", "e"),
        ("e", "g"),
        ("e", "c"),
        ("g", "h"),
        ("c", "h"),
        ("h", "i"),
        ("c", "d"),
        ("d", "f"),
        ("g", "j"),
        ("g", "k"),
        ("g", "l"),
        ("j", "k"),
        ("k", "l"),
        ("j", "l"),
        ("g", "m"),
        ("g", "n"),
        ("g", "o"),
        ("m", "n"),
        ("n", "o"),
        ("m", "o"),
    ])
}

pub fn edge_by_labels(g: &Graph, a: &str, b: &str) -> usize {
    let u = g.vertex_by_label(a).expect("label present");
    let v = g.vertex_by_label(b).expect("label present");
    g.edge_id(u, v).expect("edge present")
}

pub fn relabel(g: &Graph, seed: u64) -> Graph {
    let mut perm: Vec<usize> = (0..g.n()).collect();
    perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let edges: Vec<_> = g.edges().iter().map(|&(a, b)| (perm[a], perm[b])).collect();
    graph(g.n(), &edges)
}

/// Connected ER graphs with `n <= 8`, alternating `p` between 0.3 and 0.5.
/// Draws whose largest component misses a vertex are skipped.
pub fn small_er_corpus(count: usize, seed: u64) -> Vec<(String, Graph)> {
    let mut out = Vec::with_capacity(count);
    let mut index = 0u64;
    while out.len() < count {
        let n = 4 + (index % 5) as usize;
        let p = if index.is_multiple_of(2) { 0.3 } else { 0.5 };
        index += 1;
        if let Ok(g) = generators::gen_er(n, p, seed, index) {
            if g.dropped_vertices() == 0 && g.n() >= 3 {
                out.push((format!("er{n}_{p}_{index}"), g));
            }
        }
    }
    out
}

pub fn bfs(g: &Graph, s: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.n()];
    dist[s] = 0;
    let mut queue = VecDeque::from([s]);
    while let Some(x) = queue.pop_front() {
        for &y in g.neighbors(x) {
            if dist[y] == usize::MAX {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    dist
}

/// Every shortest `(u, v)`-path as a vertex sequence starting at `u`, found by
/// depth-first search over simple paths of exactly `d(u, v)` edges.
pub fn all_shortest_paths(g: &Graph, u: usize, v: usize) -> Vec<Vec<usize>> {
    let target = bfs(g, u)[v];
    let mut out = Vec::new();
    let mut stack = vec![u];
    let mut on_path = vec![false; g.n()];
    on_path[u] = true;
    extend(g, v, target, &mut stack, &mut on_path, &mut out);
    out
}

fn extend(
    g: &Graph,
    v: usize,
    target: usize,
    stack: &mut Vec<usize>,
    on_path: &mut [bool],
    out: &mut Vec<Vec<usize>>,
) {
    let x = *stack.last().unwrap();
    if x == v {
        if stack.len() - 1 == target {
            out.push(stack.clone());
        }
        return;
    }
    if stack.len() > target {
        return;
    }
    for &y in g.neighbors(x) {
        if !on_path[y] {
            on_path[y] = true;
            stack.push(y);
            extend(g, v, target, stack, on_path, out);
            stack.pop();
            on_path[y] = false;
        }
    }
}

/// Separating edges, separating internal vertices and path count of a pair.
#[derive(Debug, PartialEq, Eq)]
pub struct PairOracle {
    pub edges: BTreeSet<usize>,
    pub vertices: BTreeSet<usize>,
    pub count: u128,
}

pub fn pair_oracle(g: &Graph, u: usize, v: usize) -> PairOracle {
    let paths = all_shortest_paths(g, u, v);
    let edge_sets: Vec<BTreeSet<usize>> = paths
        .iter()
        .map(|p| p.windows(2).map(|w| g.edge_id(w[0], w[1]).unwrap()).collect())
        .collect();
    let vertex_sets: Vec<BTreeSet<usize>> = paths
        .iter()
        .map(|p| p[1..p.len() - 1].iter().copied().collect())
        .collect();
    let meet = |sets: &[BTreeSet<usize>]| {
        sets.iter()
            .skip(1)
            .fold(sets[0].clone(), |acc, s| acc.intersection(s).copied().collect())
    };
    PairOracle {
        edges: meet(&edge_sets),
        vertices: meet(&vertex_sets),
        count: paths.len() as u128,
    }
}

/// Auxiliary graph edges derived from the oracle.
pub fn aux_edges_oracle(g: &Graph) -> BTreeSet<(usize, usize)> {
    let mut out = BTreeSet::new();
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            let sep: Vec<usize> = pair_oracle(g, u, v).edges.into_iter().collect();
            for (i, &a) in sep.iter().enumerate() {
                for &b in &sep[i + 1..] {
                    out.insert((a.min(b), a.max(b)));
                }
            }
        }
    }
    out
}

fn repo_root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn runs(program: &str, args: &[&str]) -> bool {
    Command::new(program)
        .args(args)
        .output()
        .is_ok_and(|o| o.status.success())
}

/// An external MIP backend: `SRC_SOLVER_CMD`, else HiGHS through the bundled
/// script, else a CBC binary.
pub fn external_backend() -> Option<Backend> {
    if let Some(found) = ExternalSolver::from_env() {
        return Some(Backend::External(found.expect("SRC_SOLVER_CMD is a valid template")));
    }
    let script = repo_root().join("python/highs_solve.py");
    if script.exists() && runs("python3", &["-c", "import highspy"]) {
        let template = format!("python3 {} {{lp}} {{sol}} {{time}}", script.display());
        return Some(Backend::External(ExternalSolver::new(template).unwrap()));
    }
    let pulp_cbc = "/usr/local/lib/python3.10/dist-packages/pulp/solverdir/cbc/linux/i64/cbc";
    for cbc in ["cbc", pulp_cbc] {
        if runs(cbc, &["-quit"]) {
            let template = format!("{cbc} {{lp}} sec {{time}} solve solu {{sol}}");
            return Some(Backend::External(ExternalSolver::new(template).unwrap()));
        }
    }
    None
}

/// The external backend when one is installed, otherwise exhaustive search.
pub fn backend() -> Backend {
    external_backend().unwrap_or(Backend::Exhaustive { guard: 30 })
}
