//! CPLEX LP text output.

use std::fmt::Write as _;

use super::{NeutralModel, VarId};

const TERMS_PER_LINE: usize = 8;

fn write_terms(out: &mut String, model: &NeutralModel, terms: &[(VarId, i64)]) {
    for (i, &(v, c)) in terms.iter().enumerate() {
        if i > 0 && i % TERMS_PER_LINE == 0 {
            out.push_str("\n   ");
        }
        let sign = if c < 0 { "-" } else { "+" };
        let magnitude = c.unsigned_abs();
        if i == 0 {
            if c < 0 {
                out.push_str(" -");
            }
        } else {
            let _ = write!(out, " {sign}");
        }
        if magnitude == 1 {
            let _ = write!(out, " {}", model.name(v));
        } else {
            let _ = write!(out, " {magnitude} {}", model.name(v));
        }
    }
}

/// Renders `model` in LP format: objective, rows in insertion order, fixings
/// as bounds, and every variable declared binary.
pub fn write_lp(model: &NeutralModel) -> String {
    let mut out = String::from("Minimize\n obj:");
    let objective: Vec<_> = model.objective().iter().copied().filter(|&(_, c)| c != 0).collect();
    if objective.is_empty() {
        // constant objective; mainstream readers want at least one term
        let _ = write!(out, " 0 {}", model.name(0));
    } else {
        write_terms(&mut out, model, &objective);
    }
    out.push_str("\nSubject To\n");
    for row in model.rows() {
        let _ = write!(out, " {}:", row.name);
        if row.terms.is_empty() {
            let _ = write!(out, " 0 {}", model.name(0));
        } else {
            write_terms(&mut out, model, &row.terms);
        }
        let _ = writeln!(out, " {} {}", row.sense.symbol(), row.rhs);
    }
    let fixed: Vec<_> = (0..model.var_count())
        .filter_map(|v| model.fixed(v).map(|val| (v, val)))
        .collect();
    if !fixed.is_empty() {
        out.push_str("Bounds\n");
        for (v, val) in fixed {
            let _ = writeln!(out, " {} = {}", model.name(v), u8::from(val));
        }
    }
    out.push_str("Binary\n");
    for v in 0..model.var_count() {
        let _ = writeln!(out, " {}", model.name(v));
    }
    out.push_str("End\n");
    out
}
