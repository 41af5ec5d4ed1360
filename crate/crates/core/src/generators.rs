//! Seeded random instance families: Erdős–Rényi, Watts–Strogatz and
//! bipartite Erdős–Rényi.
//!
//! Every generator draws from ChaCha8 seeded with `seed` on stream `index`,
//! so instance `i` of a batch does not depend on how many others were drawn.

use std::collections::HashSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

fn rng_for(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("probability {p} outside [0, 1]")))
    }
}

/// `G(n, p)`, reduced to its largest component.
pub fn gen_er(n: usize, p: f64, seed: u64, index: u64) -> Result<Graph> {
    check_probability(p)?;
    if n < 2 {
        return Err(Error::InvalidParameter("ER needs at least 2 vertices".into()));
    }
    let mut rng = rng_for(seed, index);
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    Graph::from_edges(n, &edges)
}

/// Ring lattice on `n` vertices joined to their `k` nearest neighbors, then
/// each lattice edge is, with probability `p`, removed and replaced by a
/// uniformly random edge not currently in the graph.
pub fn gen_ws(n: usize, k: usize, p: f64, seed: u64, index: u64) -> Result<Graph> {
    check_probability(p)?;
    if k < 2 || !k.is_multiple_of(2) || k >= n {
        return Err(Error::InvalidParameter(format!(
            "WS needs an even k with 2 <= k < n, got k={k}, n={n}"
        )));
    }
    let mut rng = rng_for(seed, index);
    let lattice: Vec<(VertexId, VertexId)> = (0..n)
        .flat_map(|a| (1..=k / 2).map(move |j| canonical(a, (a + j) % n)))
        .collect();
    let mut present: HashSet<(VertexId, VertexId)> = lattice.iter().copied().collect();
    let total_pairs = n * (n - 1) / 2;
    for &edge in &lattice {
        if !rng.gen_bool(p) || present.len() == total_pairs {
            continue;
        }
        present.remove(&edge);
        let replacement = random_non_edge(n, &present, edge, &mut rng);
        match replacement {
            Some(e) => {
                present.insert(e);
            }
            None => {
                present.insert(edge);
            }
        }
    }
    let mut edges: Vec<_> = present.into_iter().collect();
    edges.sort_unstable();
    Graph::from_edges(n, &edges)
}

fn canonical(a: VertexId, b: VertexId) -> (VertexId, VertexId) {
    (a.min(b), a.max(b))
}

fn random_non_edge<R: Rng>(
    n: usize,
    present: &HashSet<(VertexId, VertexId)>,
    removed: (VertexId, VertexId),
    rng: &mut R,
) -> Option<(VertexId, VertexId)> {
    let free = |e: &(VertexId, VertexId)| !present.contains(e) && *e != removed;
    for _ in 0..64 {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a != b && free(&canonical(a, b)) {
            return Some(canonical(a, b));
        }
    }
    let candidates: Vec<_> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .filter(free)
        .collect();
    if candidates.is_empty() {
        None
    } else {
        Some(candidates[rng.gen_range(0..candidates.len())])
    }
}

/// Random bipartite graph with parts `0..n1` and `n1..n1 + n2`, reduced to
/// its largest component.
pub fn gen_ber(n1: usize, n2: usize, p: f64, seed: u64, index: u64) -> Result<Graph> {
    check_probability(p)?;
    if n1 == 0 || n2 == 0 {
        return Err(Error::InvalidParameter("BER parts must be nonempty".into()));
    }
    let mut rng = rng_for(seed, index);
    let mut edges = Vec::new();
    for a in 0..n1 {
        for b in n1..n1 + n2 {
            if rng.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    Graph::from_edges(n1 + n2, &edges)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    Er { n: usize, p: f64 },
    Ws { n: usize, k: usize, p: f64 },
    Ber { n1: usize, n2: usize, p: f64 },
}

/// A generator call together with its instance name.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenSpec {
    pub family: Family,
    pub seed: u64,
    pub index: u64,
}

/// `p` as a percentage with trailing zeros trimmed: 0.032 becomes `3.2`.
fn percent(p: f64) -> String {
    let s = format!("{:.6}", p * 100.0);
    let s = s.trim_end_matches('0').trim_end_matches('.');
    s.to_string()
}

impl GenSpec {
    pub fn name(&self) -> String {
        let i = self.index;
        match self.family {
            Family::Er { n, p } => format!("ER_{n}_{}_{i}", percent(p)),
            Family::Ws { n, k, p } => format!("WS_{n}_{k}_{}_{i}", percent(p)),
            Family::Ber { n1, n2, p } => format!("BER_{n1}_{n2}_{}_{i}", percent(p)),
        }
    }

    pub fn generate(&self) -> Result<Graph> {
        match self.family {
            Family::Er { n, p } => gen_er(n, p, self.seed, self.index),
            Family::Ws { n, k, p } => gen_ws(n, k, p, self.seed, self.index),
            Family::Ber { n1, n2, p } => gen_ber(n1, n2, p, self.seed, self.index),
        }
    }
}

impl fmt::Display for GenSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_follow_the_scheme() {
        let er = GenSpec {
            family: Family::Er { n: 80, p: 0.032 },
            seed: 7,
            index: 3,
        };
        assert_eq!(er.name(), "ER_80_3.2_3");
        let ws = GenSpec {
            family: Family::Ws { n: 100, k: 10, p: 0.01 },
            seed: 0,
            index: 0,
        };
        assert_eq!(ws.name(), "WS_100_10_1_0");
        let ber = GenSpec {
            family: Family::Ber { n1: 2, n2: 25, p: 0.95 },
            seed: 0,
            index: 4,
        };
        assert_eq!(ber.name(), "BER_2_25_95_4");
    }

    #[test]
    fn extreme_probabilities() {
        let k5 = gen_er(5, 1.0, 1, 0).unwrap();
        assert_eq!(k5.m(), 10);
        assert!(matches!(gen_er(5, 0.0, 1, 0), Err(Error::EmptyGraph)));
        assert_eq!(gen_ber(2, 9, 1.0, 1, 0).unwrap().m(), 18);
        assert!(gen_er(5, 1.5, 1, 0).is_err());
    }

    #[test]
    fn lattice_and_rewiring_keep_edge_count() {
        let ring = gen_ws(10, 4, 0.0, 3, 0).unwrap();
        assert_eq!(ring.m(), 20);
        assert!((0..10).all(|v| ring.degree(v) == 4));
        let ws = gen_ws(100, 20, 0.01, 3, 1).unwrap();
        assert_eq!(ws.m(), 1000);
        assert!(gen_ws(10, 3, 0.1, 0, 0).is_err());
        assert!(gen_ws(4, 4, 0.1, 0, 0).is_err());
    }

    #[test]
    fn deterministic_per_seed_and_index() {
        let a = gen_er(20, 0.2, 5, 1).unwrap();
        let b = gen_er(20, 0.2, 5, 1).unwrap();
        let c = gen_er(20, 0.2, 5, 2).unwrap();
        assert_eq!(a.edges(), b.edges());
        assert_ne!(a.edges(), c.edges());
    }
}
