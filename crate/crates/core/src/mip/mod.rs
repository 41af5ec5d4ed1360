//! Solver-neutral 0/1 models and the backends that solve them.
//!
//! [`NeutralModel`] holds binary variables, integer rows and a minimization
//! objective. It is written as CPLEX-style LP text ([`lp::write_lp`]) for an
//! external solver process ([`external`]), or bypassed entirely by the
//! exhaustive search backend ([`exhaustive`]) on tiny instances. Whatever the
//! source, an assignment is only trusted after every row has been
//! re-evaluated in exact integer arithmetic.

pub mod exhaustive;
pub mod external;
pub mod lp;

use std::collections::HashMap;

pub use exhaustive::{solve_exhaustive, DEFAULT_EXHAUSTIVE_GUARD};
pub use external::ExternalSolver;
pub use lp::write_lp;

pub type VarId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

impl Sense {
    pub fn symbol(self) -> &'static str {
        match self {
            Sense::Le => "<=",
            Sense::Ge => ">=",
            Sense::Eq => "=",
        }
    }

    fn holds(self, lhs: i64, rhs: i64) -> bool {
        match self {
            Sense::Le => lhs <= rhs,
            Sense::Ge => lhs >= rhs,
            Sense::Eq => lhs == rhs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub name: String,
    pub terms: Vec<(VarId, i64)>,
    pub sense: Sense,
    pub rhs: i64,
}

#[derive(Debug, Clone, Default)]
pub struct NeutralModel {
    names: Vec<String>,
    fixed: Vec<Option<bool>>,
    index: HashMap<String, VarId>,
    rows: Vec<Row>,
    objective: Vec<(VarId, i64)>,
    hint: Option<Vec<bool>>,
}

impl NeutralModel {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a binary variable. Names must be unique.
    pub fn add_var(&mut self, name: impl Into<String>) -> VarId {
        let name = name.into();
        let id = self.names.len();
        let previous = self.index.insert(name.clone(), id);
        assert!(previous.is_none(), "duplicate variable name {name}");
        self.names.push(name);
        self.fixed.push(None);
        id
    }

    pub fn fix(&mut self, var: VarId, value: bool) {
        self.fixed[var] = Some(value);
    }

    pub fn add_row(&mut self, name: impl Into<String>, terms: Vec<(VarId, i64)>, sense: Sense, rhs: i64) {
        self.rows.push(Row {
            name: name.into(),
            terms,
            sense,
            rhs,
        });
    }

    pub fn set_objective(&mut self, terms: Vec<(VarId, i64)>) {
        self.objective = terms;
    }

    pub fn set_hint(&mut self, hint: Vec<bool>) {
        self.hint = Some(hint);
    }

    pub fn hint(&self) -> Option<&[bool]> {
        self.hint.as_deref()
    }

    pub fn var_count(&self) -> usize {
        self.names.len()
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn name(&self, var: VarId) -> &str {
        &self.names[var]
    }

    pub fn var(&self, name: &str) -> Option<VarId> {
        self.index.get(name).copied()
    }

    pub fn fixed(&self, var: VarId) -> Option<bool> {
        self.fixed[var]
    }

    pub fn fixed_count(&self) -> usize {
        self.fixed.iter().filter(|f| f.is_some()).count()
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn objective(&self) -> &[(VarId, i64)] {
        &self.objective
    }

    pub fn objective_value(&self, assignment: &[bool]) -> i64 {
        self.objective
            .iter()
            .map(|&(v, c)| if assignment[v] { c } else { 0 })
            .sum()
    }

    /// Exact check of every row and fixing; the error names the first
    /// violated one.
    pub fn check(&self, assignment: &[bool]) -> Result<(), String> {
        if assignment.len() != self.names.len() {
            return Err(format!(
                "assignment has {} values for {} variables",
                assignment.len(),
                self.names.len()
            ));
        }
        for (v, fixed) in self.fixed.iter().enumerate() {
            if let Some(value) = fixed {
                if assignment[v] != *value {
                    return Err(format!("fixed variable {} violated", self.names[v]));
                }
            }
        }
        for row in &self.rows {
            let lhs: i64 = row
                .terms
                .iter()
                .map(|&(v, c)| if assignment[v] { c } else { 0 })
                .sum();
            if !row.sense.holds(lhs, row.rhs) {
                return Err(format!(
                    "row {} violated: {} {} {}",
                    row.name,
                    lhs,
                    row.sense.symbol(),
                    row.rhs
                ));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SolveStatus {
    Optimal { objective: i64, assignment: Vec<bool> },
    Feasible { objective: i64, assignment: Vec<bool> },
    Infeasible,
    TimeLimit {
        bound: Option<f64>,
        incumbent: Option<(i64, Vec<bool>)>,
    },
    Error(String),
}

impl SolveStatus {
    pub fn assignment(&self) -> Option<&[bool]> {
        match self {
            SolveStatus::Optimal { assignment, .. } | SolveStatus::Feasible { assignment, .. } => {
                Some(assignment)
            }
            SolveStatus::TimeLimit {
                incumbent: Some((_, a)),
                ..
            } => Some(a),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            SolveStatus::Optimal { .. } => "optimal",
            SolveStatus::Feasible { .. } => "feasible",
            SolveStatus::Infeasible => "infeasible",
            SolveStatus::TimeLimit { .. } => "time_limit",
            SolveStatus::Error(_) => "error",
        }
    }
}
