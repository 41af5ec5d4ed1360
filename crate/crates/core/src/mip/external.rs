//! External MIP solver bridge: write the model as an LP file, run a
//! configurable command, read the solution back and validate it.
//!
//! The command template may use these placeholders:
//!
//! - `{lp}`: path of the model file written by [`write_lp`](super::write_lp)
//! - `{sol}`: path where the solver must write its solution
//! - `{time}`: time limit in whole seconds
//! - `{dir}`: the scratch directory holding both files
//!
//! Two solution layouts are understood. The neutral one is an optional
//! `status: <optimal|feasible|infeasible|time_limit>` line, optional
//! `objective: <v>` and `bound: <v>` lines, then `name value` pairs. The
//! native CBC layout (`Optimal - objective value 6.0` followed by
//! `index name value reduced-cost` rows) is recognized as well. Variables
//! missing from the file are zero.

use std::path::Path;
use std::process::Command;
use std::time::Duration;

use super::{write_lp, NeutralModel, SolveStatus};
use crate::error::{Error, Result};

/// Environment variable holding the default command template.
pub const SOLVER_ENV: &str = "SRC_SOLVER_CMD";

/// Template for the COIN-OR CBC command-line solver.
pub const CBC_TEMPLATE: &str = "cbc {lp} sec {time} solve solu {sol}";

/// Template for HiGHS through the bundled `python/highs_solve.py` wrapper.
pub const HIGHS_TEMPLATE: &str = "python3 python/highs_solve.py {lp} {sol} {time}";

const INTEGRALITY_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExternalSolver {
    template: String,
}

impl ExternalSolver {
    pub fn new(template: impl Into<String>) -> Result<Self> {
        let template = template.into();
        if !template.contains("{lp}") || !template.contains("{sol}") {
            return Err(Error::InvalidParameter(format!(
                "solver command must contain {{lp}} and {{sol}}: {template}"
            )));
        }
        Ok(ExternalSolver { template })
    }

    /// Reads the template from `SRC_SOLVER_CMD`, if set.
    pub fn from_env() -> Option<Result<Self>> {
        std::env::var(SOLVER_ENV)
            .ok()
            .filter(|s| !s.trim().is_empty())
            .map(Self::new)
    }

    pub fn template(&self) -> &str {
        &self.template
    }

    /// Writes the model, runs the solver and parses its answer.
    ///
    /// Spawn failures are errors; everything the solver reports, including
    /// unusable output, comes back as a [`SolveStatus`].
    pub fn solve(&self, model: &NeutralModel, time_limit: Option<Duration>) -> Result<SolveStatus> {
        let dir = tempfile::Builder::new().prefix("rainbow-mip").tempdir()?;
        let lp_path = dir.path().join("model.lp");
        let sol_path = dir.path().join("model.sol");
        std::fs::write(&lp_path, write_lp(model))?;

        let seconds = time_limit.map_or(1_000_000_000, |d| d.as_secs_f64().ceil().max(1.0) as u64);
        let command = self
            .template
            .replace("{lp}", &lp_path.to_string_lossy())
            .replace("{sol}", &sol_path.to_string_lossy())
            .replace("{time}", &seconds.to_string())
            .replace("{dir}", &dir.path().to_string_lossy());
        log::debug!("running solver: {command}");
        let output = Command::new("sh")
            .arg("-c")
            .arg(&command)
            .current_dir(std::env::current_dir()?)
            .output()
            .map_err(|e| Error::Backend(format!("cannot spawn `{command}`: {e}")))?;
        let stdout = String::from_utf8_lossy(&output.stdout);
        let stderr = String::from_utf8_lossy(&output.stderr);

        let solution = read_if_present(&sol_path)?;
        if solution.is_none() && !output.status.success() {
            return Err(Error::Backend(format!(
                "`{command}` exited with {}: {}",
                output.status,
                tail(&stderr, 400)
            )));
        }
        Ok(interpret(model, solution.as_deref(), &stdout))
    }
}

fn read_if_present(path: &Path) -> Result<Option<String>> {
    match std::fs::read_to_string(path) {
        Ok(s) => Ok(Some(s)),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
        Err(e) => Err(e.into()),
    }
}

fn tail(s: &str, n: usize) -> &str {
    let start = s.len().saturating_sub(n);
    let start = (start..s.len()).find(|&i| s.is_char_boundary(i)).unwrap_or(s.len());
    &s[start..]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Reported {
    Optimal,
    Feasible,
    Infeasible,
    TimeLimit,
    Unknown,
}

fn classify(word: &str) -> Reported {
    let w = word.to_ascii_lowercase();
    if w.contains("infeasible") {
        Reported::Infeasible
    } else if w.starts_with("optimal") {
        Reported::Optimal
    } else if w.contains("time") || w.starts_with("stopped") {
        Reported::TimeLimit
    } else if w.starts_with("feasible") || w.starts_with("solution") {
        Reported::Feasible
    } else {
        Reported::Unknown
    }
}

struct Parsed {
    status: Reported,
    bound: Option<f64>,
    values: Vec<(String, f64)>,
}

fn parse_solution(text: &str) -> std::result::Result<Parsed, String> {
    let mut parsed = Parsed {
        status: Reported::Unknown,
        bound: None,
        values: Vec::new(),
    };
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let lower = line.to_ascii_lowercase();
        if let Some(rest) = lower.strip_prefix("status:") {
            parsed.status = classify(rest.trim());
            continue;
        }
        if let Some(rest) = lower.strip_prefix("bound:") {
            parsed.bound = rest.trim().parse().ok();
            continue;
        }
        if lower.starts_with("objective:") {
            continue;
        }
        if i == 0 || lower.contains("objective value") {
            if let Some((head, _)) = line.split_once(" - ") {
                parsed.status = classify(head);
                continue;
            }
        }
        let tokens: Vec<&str> = line.split_whitespace().filter(|t| *t != "**").collect();
        let (name, value) = match tokens.as_slice() {
            [name, value] => (*name, *value),
            [idx, name, value, ..] if idx.parse::<usize>().is_ok() => (*name, *value),
            _ => return Err(format!("unparseable solution line: {line}")),
        };
        let value: f64 = value
            .parse()
            .map_err(|_| format!("bad value for {name}: {value}"))?;
        parsed.values.push((name.to_string(), value));
    }
    Ok(parsed)
}

fn stdout_status(stdout: &str) -> Reported {
    let lower = stdout.to_ascii_lowercase();
    if lower.contains("proven infeasible") || lower.contains("problem is infeasible") {
        Reported::Infeasible
    } else if lower.contains("stopped on time") || lower.contains("time limit") {
        Reported::TimeLimit
    } else if lower.contains("optimal solution found") {
        Reported::Optimal
    } else {
        Reported::Unknown
    }
}

fn stdout_bound(stdout: &str) -> Option<f64> {
    stdout.lines().find_map(|l| {
        let l = l.trim();
        ["Lower bound:", "Best possible:"]
            .iter()
            .find_map(|p| l.strip_prefix(p))
            .and_then(|rest| rest.split_whitespace().next())
            .and_then(|v| v.parse().ok())
    })
}

fn to_assignment(model: &NeutralModel, values: &[(String, f64)]) -> std::result::Result<Vec<bool>, String> {
    let mut assignment = vec![false; model.var_count()];
    for (name, value) in values {
        let var = model
            .var(name)
            .ok_or_else(|| format!("solution names unknown variable {name}"))?;
        assignment[var] = if (value - 1.0).abs() <= INTEGRALITY_TOL {
            true
        } else if value.abs() <= INTEGRALITY_TOL {
            false
        } else {
            return Err(format!("{name} = {value} is not binary"));
        };
    }
    model.check(&assignment)?;
    Ok(assignment)
}

/// Turns solver output into a validated status.
pub(crate) fn interpret(model: &NeutralModel, solution: Option<&str>, stdout: &str) -> SolveStatus {
    let parsed = match solution.map(parse_solution) {
        Some(Ok(p)) => p,
        Some(Err(e)) => return SolveStatus::Error(e),
        None => Parsed {
            status: Reported::Unknown,
            bound: None,
            values: Vec::new(),
        },
    };
    let mut status = parsed.status;
    if status == Reported::Unknown {
        status = stdout_status(stdout);
    }
    let bound = parsed.bound.or_else(|| stdout_bound(stdout));
    match status {
        Reported::Infeasible => SolveStatus::Infeasible,
        Reported::TimeLimit => {
            let incumbent = to_assignment(model, &parsed.values)
                .ok()
                .filter(|_| !parsed.values.is_empty())
                .map(|a| (model.objective_value(&a), a));
            SolveStatus::TimeLimit { bound, incumbent }
        }
        Reported::Optimal | Reported::Feasible | Reported::Unknown => {
            if solution.is_none() {
                return SolveStatus::Error("solver wrote no solution file".into());
            }
            match to_assignment(model, &parsed.values) {
                Ok(assignment) => {
                    let objective = model.objective_value(&assignment);
                    if status == Reported::Optimal {
                        SolveStatus::Optimal {
                            objective,
                            assignment,
                        }
                    } else {
                        SolveStatus::Feasible {
                            objective,
                            assignment,
                        }
                    }
                }
                Err(e) => SolveStatus::Error(format!("solution rejected: {e}")),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mip::Sense;

    fn toy() -> NeutralModel {
        let mut m = NeutralModel::new();
        let x = m.add_var("x1");
        let z = m.add_var("z1");
        m.set_objective(vec![(z, 1)]);
        m.add_row("c1", vec![(x, 1), (z, -1)], Sense::Le, 0);
        m.add_row("c2", vec![(x, 1)], Sense::Eq, 1);
        m
    }

    #[test]
    fn template_needs_placeholders() {
        assert!(ExternalSolver::new("cbc {lp}").is_err());
        assert!(ExternalSolver::new(CBC_TEMPLATE).is_ok());
    }

    #[test]
    fn neutral_format() {
        let status = interpret(&toy(), Some("status: optimal\nobjective: 1\nx1 1\nz1 1.0000000001\n"), "");
        assert_eq!(
            status,
            SolveStatus::Optimal {
                objective: 1,
                assignment: vec![true, true]
            }
        );
    }

    #[test]
    fn cbc_format() {
        let sol = "Optimal - objective value 1.00000000\n      0 x1  1  0\n      1 z1  1  1\n";
        assert!(matches!(interpret(&toy(), Some(sol), ""), SolveStatus::Optimal { objective: 1, .. }));
        let inf = "Infeasible - objective value 0.00000000\n";
        assert_eq!(interpret(&toy(), Some(inf), ""), SolveStatus::Infeasible);
    }

    #[test]
    fn row_violation_is_an_error() {
        let status = interpret(&toy(), Some("status: optimal\nx1 1\n"), "");
        assert!(matches!(status, SolveStatus::Error(e) if e.contains("c1")));
    }

    #[test]
    fn fractional_value_is_an_error() {
        let status = interpret(&toy(), Some("status: optimal\nx1 1\nz1 0.5\n"), "");
        assert!(matches!(status, SolveStatus::Error(e) if e.contains("not binary")));
    }

    #[test]
    fn time_limit_keeps_bound_and_incumbent() {
        let sol = "Stopped on time - objective value 1.0\n 0 x1 1 0\n 1 z1 1 0\n";
        let status = interpret(&toy(), Some(sol), "Lower bound:        0.500\n");
        assert_eq!(
            status,
            SolveStatus::TimeLimit {
                bound: Some(0.5),
                incumbent: Some((1, vec![true, true]))
            }
        );
        let empty = interpret(&toy(), Some("status: time_limit\n"), "");
        assert_eq!(
            empty,
            SolveStatus::TimeLimit {
                bound: None,
                incumbent: None
            }
        );
    }

    #[test]
    fn infeasible_from_stdout_only() {
        let status = interpret(&toy(), None, "Result - Problem proven infeasible\n");
        assert_eq!(status, SolveStatus::Infeasible);
    }

    #[test]
    fn missing_solver_is_reported() {
        let solver = ExternalSolver::new("definitely-not-a-solver-binary {lp} {sol}").unwrap();
        assert!(matches!(solver.solve(&toy(), None), Err(Error::Backend(_))));
    }

    #[test]
    fn shell_template_round_trip() {
        // a fake solver that copies a canned answer into place
        let solver = ExternalSolver::new("test -s {lp} && printf 'status: optimal\\nx1 1\\nz1 1\\n' > {sol}").unwrap();
        let status = solver.solve(&toy(), Some(Duration::from_secs(5))).unwrap();
        assert!(matches!(status, SolveStatus::Optimal { objective: 1, .. }));
    }
}
