//! The auxiliary graph on the edges of `G`: two edges are joined when some
//! vertex pair is separated by both of them. Any clique of it must receive
//! pairwise distinct colors, so its clique number bounds `src(G)` from below.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, VertexId};
use crate::paths::PairTable;

/// Default size guard for [`chromatic_number_exact`].
pub const DEFAULT_CHROMATIC_GUARD: usize = 128;

fn words(len: usize) -> usize {
    len.div_ceil(64)
}

fn set_bit(bits: &mut [u64], i: usize) {
    bits[i / 64] |= 1 << (i % 64);
}

fn clear_bit(bits: &mut [u64], i: usize) {
    bits[i / 64] &= !(1 << (i % 64));
}

fn has_bit(bits: &[u64], i: usize) -> bool {
    bits[i / 64] >> (i % 64) & 1 == 1
}

fn count_bits(bits: &[u64]) -> usize {
    bits.iter().map(|w| w.count_ones() as usize).sum()
}

fn first_bit(bits: &[u64]) -> Option<usize> {
    bits.iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

fn iter_bits(bits: &[u64]) -> impl Iterator<Item = usize> + '_ {
    bits.iter().enumerate().flat_map(|(i, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                None
            } else {
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + t)
            }
        })
    })
}

#[derive(Debug, Clone)]
pub struct AuxiliaryGraph {
    order: usize,
    adjacency: Vec<Vec<EdgeId>>,
    rows: Vec<Vec<u64>>,
    witnesses: HashMap<(EdgeId, EdgeId), (VertexId, VertexId)>,
}

impl AuxiliaryGraph {
    pub fn build(g: &Graph) -> Self {
        Self::from_table(g, &PairTable::build(g))
    }

    /// Joins every two separating edges of every vertex pair.
    pub fn from_table(g: &Graph, table: &PairTable) -> Self {
        let m = g.m();
        let mut witnesses = HashMap::new();
        for rec in table.records() {
            for (i, &a) in rec.edges.iter().enumerate() {
                for &b in &rec.edges[i + 1..] {
                    witnesses.entry((a.min(b), a.max(b))).or_insert(rec.pair);
                }
            }
        }
        Self::from_witnessed(m, witnesses)
    }

    /// An auxiliary graph with explicit edges; used for plain graph tests.
    pub fn from_edges(order: usize, edges: &[(EdgeId, EdgeId)]) -> Self {
        let witnesses = edges
            .iter()
            .filter(|(a, b)| a != b)
            .map(|&(a, b)| ((a.min(b), a.max(b)), (0, 0)))
            .collect();
        Self::from_witnessed(order, witnesses)
    }

    fn from_witnessed(order: usize, witnesses: HashMap<(EdgeId, EdgeId), (VertexId, VertexId)>) -> Self {
        let mut adjacency = vec![Vec::new(); order];
        let mut rows = vec![vec![0u64; words(order)]; order];
        for &(a, b) in witnesses.keys() {
            adjacency[a].push(b);
            adjacency[b].push(a);
            set_bit(&mut rows[a], b);
            set_bit(&mut rows[b], a);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        AuxiliaryGraph {
            order,
            adjacency,
            rows,
            witnesses,
        }
    }

    /// Number of vertices, i.e. `m` of the underlying graph.
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn edge_count(&self) -> usize {
        self.witnesses.len()
    }

    pub fn neighbors(&self, e: EdgeId) -> &[EdgeId] {
        &self.adjacency[e]
    }

    pub fn adjacent(&self, a: EdgeId, b: EdgeId) -> bool {
        has_bit(&self.rows[a], b)
    }

    /// Sorted list of edges `(a, b)` with `a < b`.
    pub fn edges(&self) -> Vec<(EdgeId, EdgeId)> {
        let mut out: Vec<_> = self.witnesses.keys().copied().collect();
        out.sort_unstable();
        out
    }

    /// A vertex pair separated by both endpoints of the edge `{a, b}`.
    pub fn witness(&self, a: EdgeId, b: EdgeId) -> Option<(VertexId, VertexId)> {
        self.witnesses.get(&(a.min(b), a.max(b))).copied()
    }

    /// `|E_H| / C(|V_H|, 2)`, zero when `H` has a single vertex.
    pub fn density(&self) -> f64 {
        let pairs = self.order * self.order.saturating_sub(1) / 2;
        if pairs == 0 {
            0.0
        } else {
            self.edge_count() as f64 / pairs as f64
        }
    }

    pub fn is_clique(&self, set: &[EdgeId]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &a)| set[i + 1..].iter().all(|&b| a != b && self.adjacent(a, b)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueCertificate {
    /// Clique members in increasing edge-index order.
    pub edges: Vec<EdgeId>,
    /// False when the search stopped at its time limit.
    pub exact: bool,
}

impl CliqueCertificate {
    pub fn size(&self) -> usize {
        self.edges.len()
    }
}

struct Deadline {
    end: Option<Instant>,
    nodes: u64,
    hit: bool,
}

impl Deadline {
    fn new(limit: Option<Duration>) -> Self {
        Deadline {
            end: limit.map(|d| Instant::now() + d),
            nodes: 0,
            hit: false,
        }
    }

    fn expired(&mut self) -> bool {
        if self.hit {
            return true;
        }
        self.nodes += 1;
        if self.nodes.is_multiple_of(1024) {
            if let Some(end) = self.end {
                self.hit = Instant::now() >= end;
            }
        }
        self.hit
    }
}

/// Greedy sequential coloring of `cands`: returns the vertices in color-class
/// order and, for each, the number of classes used so far.
fn color_sort(h: &AuxiliaryGraph, cands: &[u64]) -> (Vec<usize>, Vec<usize>) {
    let mut left = cands.to_vec();
    let mut order = Vec::new();
    let mut bounds = Vec::new();
    let mut color = 0;
    while first_bit(&left).is_some() {
        color += 1;
        let mut avail = left.clone();
        while let Some(v) = first_bit(&avail) {
            clear_bit(&mut avail, v);
            clear_bit(&mut left, v);
            for (a, r) in avail.iter_mut().zip(&h.rows[v]) {
                *a &= !r;
            }
            order.push(v);
            bounds.push(color);
        }
    }
    (order, bounds)
}

fn color_bound(h: &AuxiliaryGraph, cands: &[u64]) -> usize {
    color_sort(h, cands).1.last().copied().unwrap_or(0)
}

fn expand_best(
    h: &AuxiliaryGraph,
    current: &mut Vec<usize>,
    mut cands: Vec<u64>,
    best: &mut Vec<usize>,
    deadline: &mut Deadline,
) {
    let (order, bounds) = color_sort(h, &cands);
    for i in (0..order.len()).rev() {
        if deadline.expired() || current.len() + bounds[i] <= best.len() {
            return;
        }
        let v = order[i];
        current.push(v);
        let next: Vec<u64> = cands.iter().zip(&h.rows[v]).map(|(a, b)| a & b).collect();
        if first_bit(&next).is_none() {
            if current.len() > best.len() {
                *best = current.clone();
            }
        } else {
            expand_best(h, current, next, best, deadline);
        }
        current.pop();
        clear_bit(&mut cands, v);
    }
}

/// Depth-first search in increasing vertex order for a clique of exactly
/// `need` more members; the first hit is the lexicographically smallest.
fn lex_first(
    h: &AuxiliaryGraph,
    current: &mut Vec<usize>,
    cands: &[u64],
    need: usize,
    deadline: &mut Deadline,
) -> bool {
    if need == 0 {
        return true;
    }
    if deadline.expired() || count_bits(cands) < need || color_bound(h, cands) < need {
        return false;
    }
    let members: Vec<usize> = iter_bits(cands).collect();
    for v in members {
        let mut next: Vec<u64> = cands.iter().zip(&h.rows[v]).map(|(a, b)| a & b).collect();
        for u in 0..=v {
            if has_bit(&next, u) {
                clear_bit(&mut next, u);
            }
        }
        current.push(v);
        if lex_first(h, current, &next, need - 1, deadline) {
            return true;
        }
        current.pop();
        if deadline.hit {
            return false;
        }
    }
    false
}

/// Maximum clique by branch and bound with greedy-coloring bounds.
///
/// Among maximum cliques the lexicographically smallest edge set is
/// returned. If `time_limit` elapses the best clique found so far is
/// returned with `exact == false`; it is still a valid lower bound.
pub fn max_clique(h: &AuxiliaryGraph, time_limit: Option<Duration>) -> CliqueCertificate {
    if h.order() == 0 {
        return CliqueCertificate {
            edges: Vec::new(),
            exact: true,
        };
    }
    let mut deadline = Deadline::new(time_limit);
    let mut all = vec![0u64; words(h.order())];
    for v in 0..h.order() {
        set_bit(&mut all, v);
    }
    let mut best = vec![0];
    expand_best(h, &mut Vec::new(), all.clone(), &mut best, &mut deadline);
    best.sort_unstable();
    if deadline.hit {
        return CliqueCertificate {
            edges: best,
            exact: false,
        };
    }

    let mut lex = Vec::new();
    if lex_first(h, &mut lex, &all, best.len(), &mut deadline) {
        CliqueCertificate {
            edges: lex,
            exact: true,
        }
    } else {
        // only reachable on timeout: the first phase already proved optimality
        CliqueCertificate {
            edges: best,
            exact: true,
        }
    }
}

/// Maximal cliques with at least two members, up to `cap` of them, found by
/// Bron–Kerbosch with pivoting.
pub fn maximal_cliques(h: &AuxiliaryGraph, cap: usize) -> Vec<Vec<EdgeId>> {
    let mut out = Vec::new();
    let mut p = vec![0u64; words(h.order())];
    for v in 0..h.order() {
        set_bit(&mut p, v);
    }
    let x = vec![0u64; words(h.order())];
    bron_kerbosch(h, &mut Vec::new(), p, x, cap, &mut out);
    out
}

fn bron_kerbosch(
    h: &AuxiliaryGraph,
    r: &mut Vec<usize>,
    mut p: Vec<u64>,
    mut x: Vec<u64>,
    cap: usize,
    out: &mut Vec<Vec<EdgeId>>,
) {
    if out.len() >= cap {
        return;
    }
    if first_bit(&p).is_none() {
        if first_bit(&x).is_none() && r.len() >= 2 {
            let mut clique = r.clone();
            clique.sort_unstable();
            out.push(clique);
        }
        return;
    }
    let pivot = iter_bits(&p)
        .chain(iter_bits(&x))
        .max_by_key(|&u| {
            p.iter()
                .zip(&h.rows[u])
                .map(|(a, b)| (a & b).count_ones())
                .sum::<u32>()
        })
        .expect("p is nonempty");
    let branch: Vec<usize> = iter_bits(&p).filter(|&v| !h.adjacent(pivot, v)).collect();
    for v in branch {
        let np = p.iter().zip(&h.rows[v]).map(|(a, b)| a & b).collect();
        let nx = x.iter().zip(&h.rows[v]).map(|(a, b)| a & b).collect();
        r.push(v);
        bron_kerbosch(h, r, np, nx, cap, out);
        r.pop();
        clear_bit(&mut p, v);
        set_bit(&mut x, v);
        if out.len() >= cap {
            return;
        }
    }
}

/// Exact chromatic number of `h` by DSATUR branch and bound.
pub fn chromatic_number_exact(
    h: &AuxiliaryGraph,
    guard: usize,
    time_limit: Option<Duration>,
) -> Result<usize> {
    let n = h.order();
    if n > guard {
        return Err(Error::SizeGuardExceeded { size: n, guard });
    }
    if n == 0 {
        return Ok(0);
    }
    let clique = max_clique(h, time_limit);
    let mut search = Dsatur {
        h,
        colors: vec![0; n],
        neighbor_colors: vec![vec![0u32; n + 1]; n],
        saturation: vec![0; n],
        best: n + 1,
        lower: clique.size().max(1),
        deadline: Deadline::new(time_limit),
    };
    search.branch(0, 0);
    if search.deadline.hit {
        return Err(Error::TimeLimit);
    }
    Ok(search.best)
}

struct Dsatur<'a> {
    h: &'a AuxiliaryGraph,
    colors: Vec<usize>,
    neighbor_colors: Vec<Vec<u32>>,
    saturation: Vec<usize>,
    best: usize,
    lower: usize,
    deadline: Deadline,
}

impl Dsatur<'_> {
    fn assign(&mut self, v: usize, c: usize) {
        self.colors[v] = c;
        for &w in self.h.neighbors(v) {
            if self.neighbor_colors[w][c] == 0 {
                self.saturation[w] += 1;
            }
            self.neighbor_colors[w][c] += 1;
        }
    }

    fn unassign(&mut self, v: usize) {
        let c = self.colors[v];
        self.colors[v] = 0;
        for &w in self.h.neighbors(v) {
            self.neighbor_colors[w][c] -= 1;
            if self.neighbor_colors[w][c] == 0 {
                self.saturation[w] -= 1;
            }
        }
    }

    fn branch(&mut self, colored: usize, used: usize) {
        if self.best <= self.lower || self.deadline.expired() {
            return;
        }
        if colored == self.colors.len() {
            self.best = self.best.min(used);
            return;
        }
        let v = (0..self.colors.len())
            .filter(|&v| self.colors[v] == 0)
            .max_by_key(|&v| (self.saturation[v], self.h.neighbors(v).len(), std::cmp::Reverse(v)))
            .expect("some vertex is uncolored");
        let limit = (used + 1).min(self.best - 1);
        for c in 1..=limit {
            if self.neighbor_colors[v][c] > 0 {
                continue;
            }
            self.assign(v, c);
            self.branch(colored + 1, used.max(c));
            self.unassign(v);
            if self.best <= self.lower || self.deadline.hit {
                return;
            }
        }
    }
}

/// The combined lower bound `max(diam(G), ω′(G))` and its parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerBound {
    pub value: usize,
    pub diameter: usize,
    pub omega_prime: usize,
    pub clique: CliqueCertificate,
}

pub fn lower_bound(g: &Graph) -> LowerBound {
    let h = AuxiliaryGraph::build(g);
    lower_bound_from(g, &h, None)
}

pub fn lower_bound_from(g: &Graph, h: &AuxiliaryGraph, time_limit: Option<Duration>) -> LowerBound {
    let diameter = g.diameter();
    let clique = max_clique(h, time_limit);
    LowerBound {
        value: diameter.max(clique.size()),
        diameter,
        omega_prime: clique.size(),
        clique,
    }
}

/// True iff every vertex pair has a unique shortest path.
pub fn is_geodetic(g: &Graph) -> bool {
    PairTable::build(g).is_geodetic()
}
