mod common;

use std::collections::BTreeSet;

use num_rational::Ratio;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;
use rainbow_core::heuristic::default_max_iter;
use rainbow_core::model::{compute_retained_pairs, solve, Backend, IpModel, ModelOptions};
use rainbow_core::paths::DEFAULT_PATH_BUDGET;
use rainbow_core::{
    brute_force_src, lower_bound, run_heuristic, verify_strong_rainbow, AuxiliaryGraph, Graph, Method,
    PairTable, ShortestPathDag, SolveOptions,
};

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (3..=max_n)
        .prop_flat_map(|n| (Just(n), proptest::collection::vec(any::<bool>(), n * (n - 1) / 2)))
        .prop_filter_map("needs an edge", |(n, bits)| {
            let pairs = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
            let edges: Vec<_> = pairs.zip(bits).filter(|(_, keep)| *keep).map(|(e, _)| e).collect();
            Graph::from_edges(n, &edges).ok().filter(|g| g.n() >= 2)
        })
}

fn exact_path_probability(dag: &ShortestPathDag, path_from_v: &[usize]) -> Ratio<u128> {
    path_from_v.windows(2).fold(Ratio::from_integer(1), |acc, w| {
        let total: u128 = dag.predecessors(w[0]).iter().map(|&p| dag.path_count(p)).sum();
        acc * Ratio::new(dag.path_count(w[1]), total)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn separation_matches_enumeration(g in arb_graph(9)) {
        let table = PairTable::build(&g);
        for (u, v) in table.pairs().collect::<Vec<_>>() {
            let rec = table.record(u, v);
            let oracle = pair_oracle(&g, u, v);
            prop_assert_eq!(rec.edges.iter().copied().collect::<BTreeSet<_>>(), oracle.edges);
            prop_assert_eq!(rec.vertices.iter().copied().collect::<BTreeSet<_>>(), oracle.vertices);
            prop_assert_eq!(rec.path_count, oracle.count);
        }
    }

    #[test]
    fn auxiliary_graph_matches_enumeration(g in arb_graph(8)) {
        let h = AuxiliaryGraph::build(&g);
        let built: BTreeSet<_> = h.edges().into_iter().collect();
        prop_assert_eq!(built, aux_edges_oracle(&g));
    }

    #[test]
    fn sampling_probabilities_are_uniform(g in arb_graph(8)) {
        for u in 0..g.n() {
            let dag = ShortestPathDag::build(&g, u);
            for v in 0..g.n() {
                if v == u {
                    continue;
                }
                let paths = all_shortest_paths(&g, v, u);
                for p in &paths {
                    prop_assert_eq!(
                        exact_path_probability(&dag, p),
                        Ratio::new(1, paths.len() as u128)
                    );
                }
            }
        }
    }

    #[test]
    fn heuristic_output_is_valid(g in arb_graph(9), seed in any::<u64>(), clique in any::<bool>()) {
        let lb = lower_bound(&g);
        let r = run_heuristic(&g, default_max_iter(g.n()), seed, clique.then_some(&lb.clique));
        prop_assert!(verify_strong_rainbow(&g, &r.coloring).unwrap().is_valid());
        prop_assert_eq!(r.best, r.coloring.k());
        prop_assert!(r.best >= lb.value && r.best <= g.m());
    }

    #[test]
    fn naive_model_size_follows_formula(g in arb_graph(7), extra in 0usize..3) {
        let table = PairTable::build(&g);
        let k0 = g.diameter() + extra;
        let ip = IpModel::build(&g, &table, k0, &ModelOptions::default()).unwrap();
        let (n, m) = (g.n(), g.m());
        let p = table.total_paths() as usize;
        prop_assert_eq!(ip.stats().variables, p + (m + 1) * k0);
        prop_assert_eq!(ip.stats().rows, (p + m + 1) * k0 + n * (n - 1) / 2 + m - 1);
    }

    #[test]
    fn elimination_keeps_a_witness_for_every_dropped_pair(g in arb_graph(9)) {
        let table = PairTable::build(&g);
        let retained = compute_retained_pairs(&table);
        for e in &retained.log {
            let w = table.pair_index(e.witness.0, e.witness.1);
            prop_assert!(retained.retained[w]);
            let (u, v) = e.pair;
            let (a, b) = e.witness;
            prop_assert!(table.distance(a, b) > table.distance(u, v));
            let rec = table.record(a, b);
            let mut ends = vec![u, v];
            ends.retain(|x| *x != a && *x != b);
            prop_assert!(ends.iter().all(|x| rec.vertices.contains(x)));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn bounds_sandwich_src(g in arb_graph(7), seed in any::<u64>()) {
        let src = brute_force_src(&g, g.m()).unwrap();
        let lb = lower_bound(&g);
        let r = run_heuristic(&g, 2, seed, None);
        prop_assert!(lb.diameter <= src && lb.omega_prime <= src);
        prop_assert!(src <= r.best);
    }

    #[test]
    fn invariants_survive_relabelling(g in arb_graph(7), seed in any::<u64>()) {
        let h = relabel(&g, seed);
        prop_assert_eq!(lower_bound(&g).value, lower_bound(&h).value);
        prop_assert_eq!(lower_bound(&g).omega_prime, lower_bound(&h).omega_prime);
        prop_assert_eq!(brute_force_src(&g, g.m()).unwrap(), brute_force_src(&h, h.m()).unwrap());
    }

    #[test]
    fn exhaustive_backend_matches_brute_force(g in arb_graph(6)) {
        let src = brute_force_src(&g, g.m()).unwrap();
        let backend = Backend::Exhaustive { guard: 15 };
        for method in [Method::Naive, Method::Enhanced, Method::BottomUp] {
            let report = solve(&g, &backend, &SolveOptions::for_method(method)).unwrap();
            prop_assert_eq!(report.src, Some(src), "{}", method);
            let coloring = report.coloring.unwrap();
            prop_assert!(verify_strong_rainbow(&g, &coloring).unwrap().is_valid());
        }
    }
}

#[test]
fn sampled_paths_cover_every_shortest_path() {
    let g = complete_bipartite(2, 4);
    let dag = ShortestPathDag::build(&g, 0);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut seen = BTreeSet::new();
    for _ in 0..200 {
        seen.insert(dag.sample_path(&g, 1, &mut rng).vertices().to_vec());
    }
    assert_eq!(seen.len(), 4);
}

#[test]
fn external_backend_agrees_with_exhaustive() {
    let Some(external) = external_backend() else {
        eprintln!("no external MIP solver found; skipping");
        return;
    };
    let exhaustive = Backend::Exhaustive { guard: 20 };
    let graphs = [cycle(5), complete_bipartite(2, 4), star(4), k4_chain(1), path_graph(4)];
    for g in &graphs {
        for method in [Method::Naive, Method::Enhanced, Method::BottomUp] {
            let opts = SolveOptions::for_method(method);
            let a = solve(g, &external, &opts).unwrap();
            let b = solve(g, &exhaustive, &opts).unwrap();
            assert_eq!(a.src, b.src, "{method} on n={} m={}", g.n(), g.m());
        }
    }
}

#[test]
fn stats_on_small_graphs() {
    let p3 = path_graph(3);
    let s = rainbow_core::model::instance_stats(&p3, DEFAULT_PATH_BUDGET).unwrap();
    assert_eq!((s.paths, s.paths_remaining), (3, 1));
    let c4 = cycle(4);
    let s = rainbow_core::model::instance_stats(&c4, DEFAULT_PATH_BUDGET).unwrap();
    assert_eq!((s.paths, s.paths_remaining), (8, 8));
}
