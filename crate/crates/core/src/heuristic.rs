//! Randomized strong rainbow coloring heuristic.
//!
//! Each iteration fixes one uniformly random shortest path per vertex pair
//! and colors edges in random order, reusing an existing color whenever no
//! fixed path through the edge already carries it. The best coloring over
//! all iterations is an upper bound on `src(G)`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::auxiliary::CliqueCertificate;
use crate::coloring::Coloring;
use crate::graph::{EdgeId, Graph};
use crate::paths::{PairTable, ShortestPath};

/// `ceil(n / 5)`, at least one.
pub fn default_max_iter(n: usize) -> usize {
    n.div_ceil(5).max(1)
}

/// One shortest path per unordered vertex pair, in [`PairTable`] pair order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathFixing {
    pub paths: Vec<ShortestPath>,
}

#[derive(Debug, Clone)]
pub struct HeuristicResult {
    pub coloring: Coloring,
    pub best: usize,
    pub iterations_run: usize,
    pub seed: u64,
    /// Paths fixed in the iteration that produced `coloring`; each is rainbow.
    pub fixing: PathFixing,
}

pub fn run_heuristic(
    g: &Graph,
    max_iter: usize,
    seed: u64,
    seed_clique: Option<&CliqueCertificate>,
) -> HeuristicResult {
    let table = PairTable::build(g);
    run_heuristic_with(g, &table, max_iter, seed, seed_clique)
}

pub fn run_heuristic_with(
    g: &Graph,
    table: &PairTable,
    max_iter: usize,
    seed: u64,
    seed_clique: Option<&CliqueCertificate>,
) -> HeuristicResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (colors, best, iterations_run, fixing) =
        run_with_rng(g, table, max_iter.max(1), &mut rng, seed_clique);
    HeuristicResult {
        coloring: Coloring::new(colors).expect("heuristic opens colors consecutively"),
        best,
        iterations_run,
        seed,
        fixing,
    }
}

fn run_with_rng<R: Rng>(
    g: &Graph,
    table: &PairTable,
    max_iter: usize,
    rng: &mut R,
    seed_clique: Option<&CliqueCertificate>,
) -> (Vec<usize>, usize, usize, PathFixing) {
    let m = g.m();
    let mut best = m + 1;
    let mut best_colors = Vec::new();
    let mut best_fixing = PathFixing { paths: Vec::new() };
    let seeded: &[EdgeId] = seed_clique.map_or(&[], |c| &c.edges);

    for _ in 0..max_iter {
        let paths: Vec<ShortestPath> = table
            .pairs()
            .map(|(u, v)| table.dag(u).sample_path(g, v, rng))
            .collect();
        let mut through = vec![Vec::new(); m];
        for (i, p) in paths.iter().enumerate() {
            for &e in p.edges() {
                through[e].push(i);
            }
        }

        let mut colors = vec![0usize; m];
        for (i, &e) in seeded.iter().enumerate() {
            colors[e] = i + 1;
        }
        let mut k = seeded.len();
        let mut free: Vec<EdgeId> = (0..m).filter(|&e| colors[e] == 0).collect();
        free.shuffle(rng);

        let mut abandoned = false;
        let mut blocked = Vec::new();
        for e in free {
            blocked.clear();
            blocked.resize(k + 1, false);
            let mut n_blocked = 0;
            'scan: for &p in &through[e] {
                for &f in paths[p].edges() {
                    let c = colors[f];
                    if c != 0 && !blocked[c] {
                        blocked[c] = true;
                        n_blocked += 1;
                        if n_blocked == k {
                            break 'scan;
                        }
                    }
                }
            }
            if n_blocked < k {
                let open: Vec<usize> = (1..=k).filter(|&c| !blocked[c]).collect();
                colors[e] = *open.choose(rng).expect("some color is open");
            } else {
                k += 1;
                if k >= best {
                    abandoned = true;
                    break;
                }
                colors[e] = k;
            }
        }
        if !abandoned && k < best {
            best = k;
            best_colors = colors;
            best_fixing = PathFixing { paths };
        }
    }
    (best_colors, best, max_iter, best_fixing)
}
