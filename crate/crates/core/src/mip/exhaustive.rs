//! Exact backend for tiny instances: searches colorings directly instead of
//! going through the LP encoding, then maps the result into the model's
//! variable space.

use super::SolveStatus;
use crate::coloring::RainbowSearch;
use crate::error::{Error, Result};
use crate::model::IpModel;

/// Largest edge count accepted by default.
pub const DEFAULT_EXHAUSTIVE_GUARD: usize = 14;

/// Decides the model exactly.
///
/// Feasibility models report `Feasible` or `Infeasible`; minimization models
/// report `Optimal` with the fewest colors that fit the budget.
pub fn solve_exhaustive(ip: &IpModel, guard: usize) -> Result<SolveStatus> {
    let m = ip.fixed_colors().len();
    if m > guard {
        return Err(Error::SizeGuardExceeded { size: m, guard });
    }
    let pairs = ip.pair_paths();
    let fixed = ip.fixed_colors();
    let floor = fixed.iter().flatten().copied().max().unwrap_or(1);
    let budgets: Vec<usize> = if ip.is_feasibility() {
        vec![ip.k0()]
    } else {
        (floor..=ip.k0()).collect()
    };
    for k in budgets {
        if let Some(colors) = RainbowSearch::new(m, &pairs, fixed).solve(k) {
            let assignment = ip.assignment_for(&colors);
            if let Err(e) = ip.neutral().check(&assignment) {
                return Ok(SolveStatus::Error(format!("search result rejected: {e}")));
            }
            let objective = ip.neutral().objective_value(&assignment);
            return Ok(if ip.is_feasibility() {
                SolveStatus::Feasible {
                    objective,
                    assignment,
                }
            } else {
                SolveStatus::Optimal {
                    objective,
                    assignment,
                }
            });
        }
    }
    Ok(SolveStatus::Infeasible)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::model::ModelOptions;
    use crate::paths::PairTable;

    fn feasibility(g: &Graph, k0: usize) -> SolveStatus {
        let opts = ModelOptions {
            feasibility: true,
            ..ModelOptions::default()
        };
        let ip = IpModel::build(g, &PairTable::build(g), k0, &opts).unwrap();
        solve_exhaustive(&ip, DEFAULT_EXHAUSTIVE_GUARD).unwrap()
    }

    #[test]
    fn star_needs_four_colors() {
        let g = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(feasibility(&g, 3), SolveStatus::Infeasible);
        assert!(matches!(feasibility(&g, 4), SolveStatus::Feasible { .. }));
    }

    #[test]
    fn c4_two_colors() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(matches!(feasibility(&g, 2), SolveStatus::Feasible { .. }));
        let ip = IpModel::build(&g, &PairTable::build(&g), 4, &ModelOptions::default()).unwrap();
        let status = solve_exhaustive(&ip, DEFAULT_EXHAUSTIVE_GUARD).unwrap();
        assert!(matches!(status, SolveStatus::Optimal { objective: 2, .. }));
    }

    #[test]
    fn guard_is_enforced() {
        let edges: Vec<_> = (0..16).map(|i| (i, i + 1)).collect();
        let g = Graph::from_edges(17, &edges).unwrap();
        let ip = IpModel::build(&g, &PairTable::build(&g), 16, &ModelOptions::default()).unwrap();
        assert!(matches!(
            solve_exhaustive(&ip, DEFAULT_EXHAUSTIVE_GUARD),
            Err(Error::SizeGuardExceeded { size: 16, guard: 14 })
        ));
    }
}
