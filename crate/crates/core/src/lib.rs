//! Exact computation of the strong rainbow connection number `src(G)`.
//!
//! The pipeline: shortest-path DAGs give separating edges and vertices for
//! every vertex pair ([`paths`]); those define the auxiliary graph whose
//! clique number bounds `src(G)` from below ([`auxiliary`]); a randomized
//! coloring heuristic gives an upper bound ([`heuristic`]); and an integer
//! program over shortest paths ([`model`]) is solved either directly or
//! bottom-up from the lower bound through a pluggable MIP backend ([`mip`]).

pub mod auxiliary;
pub mod coloring;
pub mod error;
pub mod generators;
pub mod graph;
pub mod heuristic;
pub mod mip;
pub mod model;
pub mod paths;
pub mod report;

pub use auxiliary::{
    chromatic_number_exact, is_geodetic, lower_bound, max_clique, AuxiliaryGraph,
    CliqueCertificate, LowerBound,
};
pub use coloring::{brute_force_coloring, brute_force_src, verify_strong_rainbow, Coloring, Verdict};
pub use error::{Error, Result};
pub use graph::{parse_edge_list, EdgeId, Graph, VertexId};
pub use heuristic::{run_heuristic, HeuristicResult};
pub use model::{solve_bottom_up, solve_direct, Method, SolveOptions};
pub use paths::{enumerate_shortest_paths, PairTable, SeparationRecord, ShortestPath, ShortestPathDag};
pub use report::SolveReport;
