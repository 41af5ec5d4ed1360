//! Edge colorings, strong rainbow verification, and an exhaustive search for
//! the smallest strong rainbow coloring.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, VertexId};
use crate::paths::{PairTable, ShortestPathDag, DEFAULT_PATH_BUDGET};

/// Default number of partial paths expanded per pair during verification.
pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

/// An assignment of colors `1..=k` to edges, using every color at least once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    colors: Vec<usize>,
    k: usize,
}

impl Coloring {
    /// Wraps per-edge colors, which must use exactly the colors `1..=k`.
    pub fn new(colors: Vec<usize>) -> Result<Self> {
        let k = colors.iter().copied().max().unwrap_or(0);
        let mut seen = vec![false; k + 1];
        for &c in &colors {
            if c == 0 {
                return Err(Error::InvalidColoring("colors are 1-based".into()));
            }
            seen[c] = true;
        }
        if let Some(gap) = (1..=k).find(|&c| !seen[c]) {
            return Err(Error::InvalidColoring(format!("color {gap} is unused")));
        }
        Ok(Coloring { colors, k })
    }

    /// Relabels arbitrary color ids onto `1..=k`, keeping their relative order.
    pub fn compact(raw: &[usize]) -> Self {
        let mut distinct = raw.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        let colors = raw
            .iter()
            .map(|c| distinct.binary_search(c).expect("present") + 1)
            .collect();
        Coloring {
            colors,
            k: distinct.len(),
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn color(&self, e: EdgeId) -> usize {
        self.colors[e]
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn to_file(&self, g: &Graph, method: &str) -> ColoringFile {
        ColoringFile {
            colors: self.k,
            assignment: g
                .edges()
                .iter()
                .zip(&self.colors)
                .map(|(&(a, b), &color)| EdgeColor {
                    u: g.label(a).to_string(),
                    v: g.label(b).to_string(),
                    color,
                })
                .collect(),
            method: method.to_string(),
            graph_hash: g.canonical_hash(),
        }
    }
}

/// On-disk coloring: edges named by vertex labels, colors 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringFile {
    pub colors: usize,
    pub assignment: Vec<EdgeColor>,
    #[serde(default)]
    pub method: String,
    #[serde(default)]
    pub graph_hash: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeColor {
    pub u: String,
    pub v: String,
    pub color: usize,
}

impl ColoringFile {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Maps the file onto `g`'s edges. Every edge needs exactly one entry.
    pub fn to_coloring(&self, g: &Graph) -> Result<Coloring> {
        let mut colors = vec![0; g.m()];
        for entry in &self.assignment {
            let lookup = |l: &str| {
                g.vertex_by_label(l)
                    .ok_or_else(|| Error::InvalidColoring(format!("unknown vertex {l}")))
            };
            let (a, b) = (lookup(&entry.u)?, lookup(&entry.v)?);
            let e = g.edge_id(a, b).ok_or_else(|| {
                Error::InvalidColoring(format!("{} {} is not an edge", entry.u, entry.v))
            })?;
            if colors[e] != 0 {
                return Err(Error::InvalidColoring(format!(
                    "edge {} {} colored twice",
                    entry.u, entry.v
                )));
            }
            colors[e] = entry.color;
        }
        if let Some(e) = colors.iter().position(|&c| c == 0) {
            let (a, b) = g.edge(e);
            return Err(Error::InvalidColoring(format!(
                "edge {} {} has no color",
                g.label(a),
                g.label(b)
            )));
        }
        Coloring::new(colors)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    /// No shortest path between these vertices is rainbow.
    Invalid { pair: (VertexId, VertexId) },
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

/// Checks that every vertex pair is joined by a rainbow shortest path.
pub fn verify_strong_rainbow(g: &Graph, c: &Coloring) -> Result<Verdict> {
    verify_with_budget(g, c, DEFAULT_NODE_BUDGET)
}

pub fn verify_with_budget(g: &Graph, c: &Coloring, node_budget: u64) -> Result<Verdict> {
    if c.len() != g.m() {
        return Err(Error::InvalidColoring(format!(
            "coloring covers {} edges, graph has {}",
            c.len(),
            g.m()
        )));
    }
    let dags: Vec<_> = (0..g.n()).map(|u| ShortestPathDag::build(g, u)).collect();
    let mut pairs: Vec<(VertexId, VertexId)> = (0..g.n())
        .flat_map(|u| (u + 1..g.n()).map(move |v| (u, v)))
        .collect();
    pairs.sort_by_key(|&(u, v)| std::cmp::Reverse(dags[u].distance(v)));

    let mut used = vec![false; c.k() + 1];
    for (u, v) in pairs {
        let dag = &dags[u];
        let mut nodes = 0u64;
        if !rainbow_walk(g, dag, c, v, &mut used, &mut nodes, node_budget)? {
            return Ok(Verdict::Invalid { pair: (u, v) });
        }
    }
    Ok(Verdict::Valid)
}

/// Searches from `x` back to the DAG root for a path whose colors are new.
fn rainbow_walk(
    g: &Graph,
    dag: &ShortestPathDag,
    c: &Coloring,
    x: VertexId,
    used: &mut [bool],
    nodes: &mut u64,
    budget: u64,
) -> Result<bool> {
    if x == dag.root() {
        return Ok(true);
    }
    *nodes += 1;
    if *nodes > budget {
        return Err(Error::PathBudgetExceeded {
            needed: u128::from(*nodes),
            budget: u128::from(budget),
        });
    }
    let mut preds = dag.predecessors(x).to_vec();
    preds.sort_by_key(|&w| dag.path_count(w));
    for w in preds {
        let color = c.color(g.edge_id(w, x).expect("DAG arcs are edges"));
        if used[color] {
            continue;
        }
        used[color] = true;
        let found = rainbow_walk(g, dag, c, w, used, nodes, budget);
        used[color] = false;
        if found? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Depth-first search for a coloring with at most `k` colors under which
/// every listed pair keeps at least one conflict-free path.
///
/// Edges are colored in a fixed order and a new color may only be the next
/// unused integer. A partial assignment is abandoned as soon as some pair
/// has a repeated color on each of its paths.
pub(crate) struct RainbowSearch {
    paths: Vec<Vec<EdgeId>>,
    pair_of_path: Vec<usize>,
    paths_of_edge: Vec<Vec<usize>>,
    alive: Vec<usize>,
    conflicts: Vec<u32>,
    colors: Vec<usize>,
    order: Vec<EdgeId>,
}

impl RainbowSearch {
    /// `pairs[i]` lists the edge sequences of the shortest paths of pair `i`.
    /// `fixed[e]` pre-colors edge `e`.
    pub(crate) fn new(m: usize, pairs: &[Vec<Vec<EdgeId>>], fixed: &[Option<usize>]) -> Self {
        let mut paths = Vec::new();
        let mut pair_of_path = Vec::new();
        let mut paths_of_edge = vec![Vec::new(); m];
        let mut alive = Vec::with_capacity(pairs.len());
        for (i, pair) in pairs.iter().enumerate() {
            alive.push(pair.len());
            for p in pair {
                for &e in p {
                    paths_of_edge[e].push(paths.len());
                }
                pair_of_path.push(i);
                paths.push(p.clone());
            }
        }
        let colors: Vec<usize> = fixed.iter().map(|f| f.unwrap_or(0)).collect();
        // edges lying on many paths first: they prune earliest
        let mut order: Vec<EdgeId> = (0..m).filter(|&e| fixed[e].is_none()).collect();
        order.sort_by_key(|&e| std::cmp::Reverse(paths_of_edge[e].len()));
        let mut search = RainbowSearch {
            conflicts: vec![0; paths.len()],
            paths,
            pair_of_path,
            paths_of_edge,
            alive,
            colors,
            order,
        };
        for e in 0..m {
            if search.colors[e] != 0 {
                search.record(e);
            }
        }
        search
    }

    /// Marks conflicts created by the color already stored on `e`.
    fn record(&mut self, e: EdgeId) -> Vec<usize> {
        let c = self.colors[e];
        let mut hit = Vec::new();
        for &p in &self.paths_of_edge[e] {
            if self.paths[p].iter().any(|&f| f != e && self.colors[f] == c) {
                if self.conflicts[p] == 0 {
                    self.alive[self.pair_of_path[p]] -= 1;
                }
                self.conflicts[p] += 1;
                hit.push(p);
            }
        }
        hit
    }

    fn undo(&mut self, hit: &[usize]) {
        for &p in hit {
            self.conflicts[p] -= 1;
            if self.conflicts[p] == 0 {
                self.alive[self.pair_of_path[p]] += 1;
            }
        }
    }

    fn dead(&self, hit: &[usize]) -> bool {
        hit.iter().any(|&p| self.alive[self.pair_of_path[p]] == 0)
    }

    /// Returns a complete assignment using at most `k` colors, if any.
    pub(crate) fn solve(mut self, k: usize) -> Option<Vec<usize>> {
        if self.alive.contains(&0) {
            return None;
        }
        let used = self.colors.iter().copied().max().unwrap_or(0);
        if used > k {
            return None;
        }
        if self.dfs(0, used, k) {
            Some(self.colors)
        } else {
            None
        }
    }

    fn dfs(&mut self, depth: usize, used: usize, k: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let e = self.order[depth];
        for c in 1..=(used + 1).min(k) {
            self.colors[e] = c;
            let hit = self.record(e);
            if !self.dead(&hit) && self.dfs(depth + 1, used.max(c), k) {
                return true;
            }
            self.undo(&hit);
        }
        self.colors[e] = 0;
        false
    }
}

/// Edge sequences of every shortest path of every pair, for the exhaustive
/// searches.
pub(crate) fn all_pair_paths(g: &Graph, table: &PairTable) -> Result<Vec<Vec<Vec<EdgeId>>>> {
    Ok(table
        .enumerate_all(g, DEFAULT_PATH_BUDGET)?
        .into_iter()
        .map(|ps| ps.into_iter().map(|p| p.edges().to_vec()).collect())
        .collect())
}

/// Smallest strong rainbow coloring found by exhaustive search, trying
/// `k = diam(G), diam(G) + 1, ..., k_max`.
pub fn brute_force_coloring(g: &Graph, k_max: usize) -> Result<Coloring> {
    let table = PairTable::build(g);
    let pairs = all_pair_paths(g, &table)?;
    let start = pairs
        .iter()
        .map(|ps| ps[0].len())
        .max()
        .unwrap_or(1)
        .max(1);
    let fixed = vec![None; g.m()];
    for k in start..=k_max {
        if let Some(colors) = RainbowSearch::new(g.m(), &pairs, &fixed).solve(k) {
            return Ok(Coloring::compact(&colors));
        }
    }
    Err(Error::Exhausted(k_max))
}

/// `src(G)` by exhaustive search; intended for small graphs.
pub fn brute_force_src(g: &Graph, k_max: usize) -> Result<usize> {
    brute_force_coloring(g, k_max).map(|c| c.k())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn coloring_requires_contiguous_colors() {
        assert!(Coloring::new(vec![1, 3]).is_err());
        assert!(Coloring::new(vec![0, 1]).is_err());
        assert_eq!(Coloring::new(vec![2, 1, 2]).unwrap().k(), 2);
        assert_eq!(Coloring::compact(&[7, 3, 7]).colors(), &[2, 1, 2]);
    }

    #[test]
    fn tree_with_distinct_colors_is_valid() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap();
        let c = Coloring::new(vec![1, 2, 3, 4]).unwrap();
        assert_eq!(verify_strong_rainbow(&g, &c).unwrap(), Verdict::Valid);
    }

    #[test]
    fn c4_alternating_is_valid() {
        let g = cycle(4);
        // edges in order (0,1) (0,3) (1,2) (2,3): around the cycle 01,12,23,30
        let around = [g.edge_id(0, 1), g.edge_id(1, 2), g.edge_id(2, 3), g.edge_id(3, 0)];
        let mut colors = vec![0; 4];
        for (i, e) in around.iter().enumerate() {
            colors[e.unwrap()] = 1 + i % 2;
        }
        let c = Coloring::new(colors).unwrap();
        assert!(verify_strong_rainbow(&g, &c).unwrap().is_valid());
    }

    #[test]
    fn c4_monochromatic_fails_on_antipodal_pair() {
        let g = cycle(4);
        let c = Coloring::new(vec![1; 4]).unwrap();
        match verify_strong_rainbow(&g, &c).unwrap() {
            Verdict::Invalid { pair } => assert!(pair == (0, 2) || pair == (1, 3)),
            Verdict::Valid => panic!("monochromatic C4 is not strongly rainbow"),
        }
    }

    #[test]
    fn verification_budget_is_enforced() {
        let g = cycle(6);
        let c = Coloring::new(vec![1; 6]).unwrap();
        assert!(matches!(
            verify_with_budget(&g, &c, 1),
            Err(Error::PathBudgetExceeded { .. })
        ));
    }

    #[test]
    fn coloring_file_round_trip() {
        let g = crate::graph::parse_edge_list("a b\nb c\n").unwrap();
        let c = Coloring::new(vec![2, 1]).unwrap();
        let file = c.to_file(&g, "test");
        let back = ColoringFile::from_json(&file.to_json()).unwrap();
        assert_eq!(back.to_coloring(&g).unwrap(), c);
        assert_eq!(back.graph_hash, g.canonical_hash());
    }

    #[test]
    fn coloring_file_rejects_missing_edge() {
        let g = crate::graph::parse_edge_list("a b\nb c\n").unwrap();
        let mut file = Coloring::new(vec![2, 1]).unwrap().to_file(&g, "test");
        file.assignment.pop();
        assert!(file.to_coloring(&g).is_err());
    }

    #[test]
    fn brute_force_small_families() {
        let star = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(brute_force_src(&star, 4).unwrap(), 4);
        let p3 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(brute_force_src(&p3, 3).unwrap(), 3);
        assert_eq!(brute_force_src(&cycle(4), 4).unwrap(), 2);
        assert!(matches!(brute_force_src(&star, 3), Err(Error::Exhausted(3))));
    }

    #[test]
    fn brute_force_k_2_9() {
        let edges: Vec<_> = (0..2).flat_map(|a| (2..11).map(move |b| (a, b))).collect();
        let g = Graph::from_edges(11, &edges).unwrap();
        assert_eq!(brute_force_src(&g, g.m()).unwrap(), 3);
    }
}
