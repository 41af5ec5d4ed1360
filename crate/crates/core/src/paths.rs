//! Shortest-path DAGs, separating edges and vertices, path counting,
//! enumeration and uniform sampling of shortest paths.

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, VertexId};

/// Default cap on the total number of path-edge incidences over all pairs.
pub const DEFAULT_PATH_BUDGET: u128 = 5_000_000;

/// All shortest paths leaving `root`, oriented away from it.
///
/// `preds[v]` holds the neighbours of `v` one layer closer to the root and
/// `succs[v]` those one layer further away. `counts[v]` is the number of
/// distinct shortest `(root, v)`-paths, saturating at `u128::MAX`.
#[derive(Debug, Clone)]
pub struct ShortestPathDag {
    root: VertexId,
    dist: Vec<usize>,
    layers: Vec<Vec<VertexId>>,
    preds: Vec<Vec<VertexId>>,
    succs: Vec<Vec<VertexId>>,
    counts: Vec<u128>,
    overflow: bool,
}

impl ShortestPathDag {
    /// Breadth-first search in which a vertex may be discovered by every
    /// vertex of the previous layer. Runs in `O(n + m)`.
    pub fn build(g: &Graph, root: VertexId) -> Self {
        let n = g.n();
        let mut dist = vec![usize::MAX; n];
        let mut preds = vec![Vec::new(); n];
        let mut succs = vec![Vec::new(); n];
        let mut counts = vec![0u128; n];
        let mut overflow = false;
        let mut layers = vec![vec![root]];
        dist[root] = 0;
        counts[root] = 1;
        loop {
            let depth = layers.len() - 1;
            let mut next = Vec::new();
            for &v in &layers[depth] {
                for &w in g.neighbors(v) {
                    if dist[w] == usize::MAX {
                        dist[w] = depth + 1;
                        next.push(w);
                    }
                    if dist[w] == depth + 1 {
                        preds[w].push(v);
                        succs[v].push(w);
                        match counts[w].checked_add(counts[v]) {
                            Some(c) => counts[w] = c,
                            None => {
                                counts[w] = u128::MAX;
                                overflow = true;
                            }
                        }
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            next.sort_unstable();
            layers.push(next);
        }
        for list in preds.iter_mut().chain(succs.iter_mut()) {
            list.sort_unstable();
        }
        ShortestPathDag {
            root,
            dist,
            layers,
            preds,
            succs,
            counts,
            overflow,
        }
    }

    pub fn root(&self) -> VertexId {
        self.root
    }

    pub fn distance(&self, v: VertexId) -> usize {
        self.dist[v]
    }

    pub fn distances(&self) -> &[usize] {
        &self.dist
    }

    pub fn layers(&self) -> &[Vec<VertexId>] {
        &self.layers
    }

    /// Neighbours of `v` one step closer to the root.
    pub fn predecessors(&self, v: VertexId) -> &[VertexId] {
        &self.preds[v]
    }

    /// Neighbours of `v` one step further from the root.
    pub fn successors(&self, v: VertexId) -> &[VertexId] {
        &self.succs[v]
    }

    pub fn path_count(&self, v: VertexId) -> u128 {
        self.counts[v]
    }

    /// True if some path count saturated; sampling is then no longer exact.
    pub fn has_overflow(&self) -> bool {
        self.overflow
    }

    /// Separating edges and vertices of the pair `(root, v)`.
    ///
    /// Sweeps backwards from `v` one layer at a time. The frontier `L` is the
    /// set of vertices in the current layer lying on some shortest path to
    /// `v`; `N` is the union of their predecessors. A singleton transition
    /// `|L| = |N| = 1` contributes a separating edge, a singleton `N` other
    /// than the root a separating vertex. `r_j` accumulates the number of
    /// shortest `(j, v)`-paths, so the root's value is the pair's path count.
    pub fn separation(&self, g: &Graph, v: VertexId) -> Result<SeparationRecord> {
        let u = self.root;
        if v == u {
            return Err(Error::InvalidParameter(format!(
                "separation requires distinct vertices, got {v} twice"
            )));
        }
        let pair = (u.min(v), u.max(v));
        if self.dist[v] == 1 {
            let e = g.edge_id(u, v).expect("adjacent vertices share an edge");
            return Ok(SeparationRecord {
                pair,
                edges: vec![e],
                vertices: Vec::new(),
                path_count: 1,
            });
        }

        let mut back = vec![0u128; self.dist.len()];
        let mut in_frontier = vec![false; self.dist.len()];
        let mut frontier = vec![v];
        back[v] = 1;
        let mut edges = Vec::new();
        let mut vertices = Vec::new();
        while !frontier.contains(&u) {
            for &j in &frontier {
                in_frontier[j] = true;
            }
            let mut next: Vec<VertexId> = frontier
                .iter()
                .flat_map(|&j| self.preds[j].iter().copied())
                .collect();
            next.sort_unstable();
            next.dedup();
            for &j in &next {
                back[j] = self.succs[j]
                    .iter()
                    .filter(|&&i| in_frontier[i])
                    .fold(0u128, |acc, &i| acc.saturating_add(back[i]));
            }
            if frontier.len() == 1 && next.len() == 1 {
                let e = g
                    .edge_id(frontier[0], next[0])
                    .expect("DAG arcs are graph edges");
                edges.push(e);
            }
            if next.len() == 1 && next[0] != u {
                vertices.push(next[0]);
            }
            for &j in &frontier {
                in_frontier[j] = false;
            }
            frontier = next;
        }
        edges.sort_unstable();
        vertices.sort_unstable();
        Ok(SeparationRecord {
            pair,
            edges,
            vertices,
            path_count: back[u],
        })
    }

    /// Draws a shortest `(root, v)`-path uniformly at random.
    ///
    /// Walks from `v` back to the root; a predecessor `w` of the current
    /// vertex `x` is chosen with probability `r(w) / sum of r over preds(x)`,
    /// which telescopes to `1 / r(v)` for every path.
    pub fn sample_path<R: Rng + ?Sized>(&self, g: &Graph, v: VertexId, rng: &mut R) -> ShortestPath {
        let mut walk = vec![v];
        let mut x = v;
        while x != self.root {
            let preds = &self.preds[x];
            let total: u128 = preds
                .iter()
                .fold(0u128, |acc, &w| acc.saturating_add(self.counts[w]));
            let mut ticket = rng.gen_range(0..total);
            let mut chosen = preds[0];
            for &w in preds {
                if ticket < self.counts[w] {
                    chosen = w;
                    break;
                }
                ticket -= self.counts[w];
            }
            walk.push(chosen);
            x = chosen;
        }
        ShortestPath::from_vertices(g, walk)
    }
}

/// Edges and internal vertices lying on every shortest path of a pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparationRecord {
    pub pair: (VertexId, VertexId),
    pub edges: Vec<EdgeId>,
    pub vertices: Vec<VertexId>,
    pub path_count: u128,
}

/// A shortest path between a canonical pair `(u, v)` with `u < v`, listed
/// from `u` to `v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ShortestPath {
    vertices: Vec<VertexId>,
    edges: Vec<EdgeId>,
}

impl ShortestPath {
    /// Orients `vertices` from the smaller endpoint and derives edge ids.
    pub fn from_vertices(g: &Graph, mut vertices: Vec<VertexId>) -> Self {
        if vertices.first() > vertices.last() {
            vertices.reverse();
        }
        let edges = vertices
            .windows(2)
            .map(|w| g.edge_id(w[0], w[1]).expect("consecutive path vertices are adjacent"))
            .collect();
        ShortestPath { vertices, edges }
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn pair(&self) -> (VertexId, VertexId) {
        (self.vertices[0], *self.vertices.last().expect("paths are nonempty"))
    }
}

/// Every shortest `(u, v)`-path, in lexicographic order of the vertex
/// sequence read from `min(u, v)`.
pub fn enumerate_shortest_paths(
    g: &Graph,
    u: VertexId,
    v: VertexId,
    cap: u128,
) -> Result<Vec<ShortestPath>> {
    if u == v {
        return Err(Error::InvalidParameter("enumeration needs distinct endpoints".into()));
    }
    let (start, end) = (u.min(v), u.max(v));
    let dag = ShortestPathDag::build(g, end);
    enumerate_in(g, &dag, start, cap)
}

/// Enumerates the `(start, dag.root())` paths by walking predecessors of the
/// DAG rooted at the far endpoint, smallest vertex first.
fn enumerate_in(
    g: &Graph,
    dag: &ShortestPathDag,
    start: VertexId,
    cap: u128,
) -> Result<Vec<ShortestPath>> {
    let count = dag.path_count(start);
    if dag.has_overflow() || count > cap {
        return Err(Error::PathBudgetExceeded {
            needed: count,
            budget: cap,
        });
    }
    let mut out = Vec::with_capacity(count as usize);
    let mut stack = vec![start];
    walk_predecessors(g, dag, &mut stack, &mut out);
    Ok(out)
}

fn walk_predecessors(
    g: &Graph,
    dag: &ShortestPathDag,
    stack: &mut Vec<VertexId>,
    out: &mut Vec<ShortestPath>,
) {
    let x = *stack.last().expect("stack starts nonempty");
    if x == dag.root() {
        out.push(ShortestPath::from_vertices(g, stack.clone()));
        return;
    }
    for &w in dag.predecessors(x) {
        stack.push(w);
        walk_predecessors(g, dag, stack, out);
        stack.pop();
    }
}

/// Shortest-path structure for every unordered pair of a graph.
#[derive(Debug, Clone)]
pub struct PairTable {
    n: usize,
    dags: Vec<ShortestPathDag>,
    records: Vec<SeparationRecord>,
}

impl PairTable {
    pub fn build(g: &Graph) -> Self {
        let n = g.n();
        let dags: Vec<_> = (0..n).map(|u| ShortestPathDag::build(g, u)).collect();
        let mut records = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for u in 0..n {
            for v in u + 1..n {
                records.push(dags[u].separation(g, v).expect("distinct pair"));
            }
        }
        PairTable { n, dags, records }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dag(&self, root: VertexId) -> &ShortestPathDag {
        &self.dags[root]
    }

    pub fn distance(&self, u: VertexId, v: VertexId) -> usize {
        self.dags[u].distance(v)
    }

    pub fn pair_index(&self, u: VertexId, v: VertexId) -> usize {
        let (a, b) = (u.min(v), u.max(v));
        debug_assert!(a < b && b < self.n);
        a * (2 * self.n - a - 1) / 2 + (b - a - 1)
    }

    pub fn record(&self, u: VertexId, v: VertexId) -> &SeparationRecord {
        &self.records[self.pair_index(u, v)]
    }

    /// Records for all pairs `u < v` in lexicographic pair order.
    pub fn records(&self) -> &[SeparationRecord] {
        &self.records
    }

    pub fn pairs(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.records.iter().map(|r| r.pair)
    }

    /// Total number of shortest paths over all pairs.
    pub fn total_paths(&self) -> u128 {
        self.records
            .iter()
            .fold(0u128, |acc, r| acc.saturating_add(r.path_count))
    }

    /// Sum of `r_uv * d(u, v)` over all pairs.
    pub fn path_edge_incidences(&self) -> u128 {
        self.records.iter().fold(0u128, |acc, r| {
            let d = self.distance(r.pair.0, r.pair.1) as u128;
            acc.saturating_add(r.path_count.saturating_mul(d))
        })
    }

    /// Enumerates all shortest paths of every pair, respecting `budget` on
    /// path-edge incidences.
    pub fn enumerate_all(&self, g: &Graph, budget: u128) -> Result<Vec<Vec<ShortestPath>>> {
        let needed = self.path_edge_incidences();
        if needed > budget || self.dags.iter().any(|d| d.has_overflow()) {
            return Err(Error::PathBudgetExceeded { needed, budget });
        }
        self.records
            .iter()
            .map(|r| enumerate_in(g, &self.dags[r.pair.1], r.pair.0, u128::MAX))
            .collect()
    }

    pub fn is_geodetic(&self) -> bool {
        self.records.iter().all(|r| r.path_count == 1)
    }
}
