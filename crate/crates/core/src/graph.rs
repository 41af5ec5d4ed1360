//! Simple undirected connected graphs with canonical vertex and edge indexing.
//!
//! Vertices are dense ids `0..n` assigned in first-appearance order. Edges are
//! stored as `(min, max)` pairs sorted lexicographically, so the edge index of a
//! pair is stable for a given vertex numbering.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    edges: Vec<(VertexId, VertexId)>,
    adjacency: Vec<Vec<VertexId>>,
    edge_index: HashMap<(VertexId, VertexId), EdgeId>,
    dropped_vertices: usize,
}

impl Graph {
    /// Builds a graph on vertices `0..n` labelled by their ids.
    ///
    /// Loops are dropped, parallel edges merged, and when the result is
    /// disconnected only the largest component is kept (see
    /// [`Graph::dropped_vertices`]).
    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self> {
        let labels = (0..n).map(|v| v.to_string()).collect();
        Self::from_labeled(labels, edges)
    }

    /// Same as [`Graph::from_edges`] with caller-supplied vertex labels.
    pub fn from_labeled(labels: Vec<String>, edges: &[(VertexId, VertexId)]) -> Result<Self> {
        let n = labels.len();
        let mut pairs = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if a >= n {
                return Err(Error::InvalidVertex(a));
            }
            if b >= n {
                return Err(Error::InvalidVertex(b));
            }
            if a != b {
                pairs.push((a.min(b), a.max(b)));
            }
        }
        pairs.sort_unstable();
        pairs.dedup();
        if pairs.is_empty() {
            return Err(Error::EmptyGraph);
        }

        let keep = largest_component(n, &pairs);
        let dropped = n - keep.iter().filter(|&&k| k).count();
        let (labels, pairs) = if dropped > 0 {
            log::warn!("input is disconnected; keeping the largest component, dropping {dropped} vertices");
            let mut remap = vec![usize::MAX; n];
            let mut kept_labels = Vec::new();
            for (v, label) in labels.into_iter().enumerate() {
                if keep[v] {
                    remap[v] = kept_labels.len();
                    kept_labels.push(label);
                }
            }
            let mut kept: Vec<_> = pairs
                .into_iter()
                .filter(|&(a, _)| keep[a])
                .map(|(a, b)| (remap[a], remap[b]))
                .collect();
            kept.sort_unstable();
            (kept_labels, kept)
        } else {
            (labels, pairs)
        };

        let n = labels.len();
        let mut adjacency = vec![Vec::new(); n];
        let mut edge_index = HashMap::with_capacity(pairs.len());
        for (i, &(a, b)) in pairs.iter().enumerate() {
            adjacency[a].push(b);
            adjacency[b].push(a);
            edge_index.insert((a, b), i);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Graph {
            labels,
            edges: pairs,
            adjacency,
            edge_index,
            dropped_vertices: dropped,
        })
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e]
    }

    /// Index of the edge joining `a` and `b`, in either order.
    pub fn edge_id(&self, a: VertexId, b: VertexId) -> Option<EdgeId> {
        self.edge_index.get(&(a.min(b), a.max(b))).copied()
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v].len()
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<VertexId> {
        self.labels.iter().position(|l| l == label)
    }

    /// Number of input vertices discarded by largest-component extraction.
    pub fn dropped_vertices(&self) -> usize {
        self.dropped_vertices
    }

    pub fn bfs_distances(&self, source: VertexId) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n()];
        let mut queue = VecDeque::new();
        dist[source] = 0;
        queue.push_back(source);
        while let Some(v) = queue.pop_front() {
            for &w in &self.adjacency[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn distance_matrix(&self) -> Vec<Vec<usize>> {
        (0..self.n()).map(|v| self.bfs_distances(v)).collect()
    }

    pub fn diameter(&self) -> usize {
        (0..self.n())
            .map(|v| self.bfs_distances(v).into_iter().max().unwrap_or(0))
            .max()
            .unwrap_or(0)
    }

    pub fn is_connected(&self) -> bool {
        self.bfs_distances(0).iter().all(|&d| d != usize::MAX)
    }

    /// One `u v` line per edge in canonical order, using the original labels.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for &(a, b) in &self.edges {
            let _ = writeln!(out, "{} {}", self.labels[a], self.labels[b]);
        }
        out
    }

    /// SHA-256 of the canonical edge-list serialization, hex encoded.
    pub fn canonical_hash(&self) -> String {
        hex::encode(Sha256::digest(self.to_edge_list().as_bytes()))
    }
}

/// Parses whitespace-separated vertex pairs, one per line.
///
/// Lines starting with `#` or `%` and blank lines are skipped. Vertex tokens
/// are arbitrary strings mapped to ids in order of first appearance.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut ids: HashMap<&str, VertexId> = HashMap::new();
    let mut labels = Vec::new();
    let mut edges = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with('%') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(Error::MalformedLine {
                line: lineno + 1,
                found: tokens.len(),
            });
        }
        let mut endpoints = [0; 2];
        for (slot, tok) in endpoints.iter_mut().zip(&tokens) {
            *slot = *ids.entry(tok).or_insert_with(|| {
                labels.push(tok.to_string());
                labels.len() - 1
            });
        }
        let [a, b] = endpoints;
        edges.push((a, b));
    }
    Graph::from_labeled(labels, &edges)
}

fn largest_component(n: usize, pairs: &[(VertexId, VertexId)]) -> Vec<bool> {
    let mut adjacency = vec![Vec::new(); n];
    for &(a, b) in pairs {
        adjacency[a].push(b);
        adjacency[b].push(a);
    }
    let mut component = vec![usize::MAX; n];
    let mut sizes = Vec::new();
    for start in 0..n {
        if component[start] != usize::MAX {
            continue;
        }
        let c = sizes.len();
        let mut size = 0;
        let mut stack = vec![start];
        component[start] = c;
        while let Some(v) = stack.pop() {
            size += 1;
            for &w in &adjacency[v] {
                if component[w] == usize::MAX {
                    component[w] = c;
                    stack.push(w);
                }
            }
        }
        sizes.push(size);
    }
    // ties go to the component discovered first, i.e. holding the smallest id
    let best = (0..sizes.len())
        .max_by(|&a, &b| sizes[a].cmp(&sizes[b]).then(b.cmp(&a)))
        .unwrap_or(0);
    component.into_iter().map(|c| c == best).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_path() {
        let g = parse_edge_list("0 1\n1 2").unwrap();
        assert_eq!((g.n(), g.m()), (3, 2));
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn normalizes_loops_and_duplicates() {
        let g = parse_edge_list("a b\nb a\na a\nb c").unwrap();
        assert_eq!((g.n(), g.m()), (3, 2));
        assert_eq!(g.label(0), "a");
        assert_eq!(g.edge_id(1, 0), Some(0));
    }

    #[test]
    fn skips_comments() {
        let g = parse_edge_list("% header\n# note\n\nx y\n").unwrap();
        assert_eq!(g.m(), 1);
    }

    #[test]
    fn rejects_malformed_line() {
        let err = parse_edge_list("0 1\n1 2 3\n").unwrap_err();
        assert!(matches!(err, Error::MalformedLine { line: 2, found: 3 }));
    }

    #[test]
    fn rejects_empty() {
        assert!(matches!(parse_edge_list("a a\n"), Err(Error::EmptyGraph)));
        assert!(matches!(parse_edge_list(""), Err(Error::EmptyGraph)));
    }

    #[test]
    fn keeps_largest_component() {
        let g = parse_edge_list("a b\nc d\nd e\n").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.dropped_vertices(), 2);
        assert_eq!(g.labels(), &["c", "d", "e"]);
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn distances_and_diameter() {
        let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(k2.bfs_distances(0), vec![0, 1]);
        assert_eq!(k2.diameter(), 1);
        let p = parse_edge_list("a b\nb c").unwrap();
        assert_eq!(p.bfs_distances(0), vec![0, 1, 2]);
        assert_eq!(p.diameter(), 2);
    }

    #[test]
    fn serialization_uses_labels() {
        let g = parse_edge_list("z y\ny x\n").unwrap();
        assert_eq!(g.to_edge_list(), "z y\ny x\n");
        let again = parse_edge_list(&g.to_edge_list()).unwrap();
        assert_eq!(again, g);
    }
}
