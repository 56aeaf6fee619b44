use std::collections::BTreeSet;

use super::{Cnf, Model};
use crate::element::{ElementId, Lit, Universe};
use crate::search::{Search, Step};

pub(super) struct SatModel<'a> {
    pub cnf: &'a Cnf,
    pub exact_three: bool,
}

/// Universe position of a literal (variables are dense from 1).
fn position(l: Lit) -> usize {
    2 * (l.var() as usize - 1) + l.is_negated() as usize
}

impl Model for SatModel<'_> {
    fn validate(&self, out: &mut Vec<String>) {
        for (j, clause) in self.cnf.clauses.iter().enumerate() {
            if self.exact_three && clause.len() != 3 {
                out.push(format!("clause {} arity ≠ 3 (has {})", j + 1, clause.len()));
            }
            let mut seen = BTreeSet::new();
            for &l in clause {
                if l.var() > self.cnf.num_vars {
                    out.push(format!("clause {} uses variable {} beyond {}", j + 1, l.var(), self.cnf.num_vars));
                }
                if !seen.insert(l) {
                    out.push(format!("clause {} repeats literal {}", j + 1, l));
                }
            }
        }
    }

    fn elements(&self) -> Vec<ElementId> {
        (1..=self.cnf.num_vars)
            .flat_map(|v| [ElementId::Literal(Lit::pos(v)), ElementId::Literal(Lit::neg(v))])
            .collect()
    }

    fn accepts(&self, _u: &Universe, mask: &[bool]) -> bool {
        let one_per_variable = (0..self.cnf.num_vars as usize).all(|v| mask[2 * v] != mask[2 * v + 1]);
        one_per_variable
            && self
                .cnf
                .clauses
                .iter()
                .all(|c| c.iter().any(|&l| mask[position(l)]))
    }

    fn enumerate(&self, search: &mut Search<'_>) -> Step {
        let n = self.cnf.num_vars as usize;
        // clauses grouped by the largest variable they mention
        let mut closing: Vec<Vec<&Vec<Lit>>> = vec![Vec::new(); n + 1];
        for c in &self.cnf.clauses {
            let last = c.iter().map(|l| l.var() as usize).max().unwrap_or(0);
            closing[last].push(c);
        }
        let mut value = vec![false; n + 1];
        rec(search, &closing, &mut value, 0)
    }
}

fn rec(search: &mut Search<'_>, closing: &[Vec<&Vec<Lit>>], value: &mut Vec<bool>, depth: usize) -> Step {
    search.visit()?;
    if closing[depth].iter().any(|c| !c.iter().any(|l| l.holds(value))) {
        return Ok(());
    }
    let n = value.len() - 1;
    if depth == n {
        let lits = (1..=n as u32).map(|v| ElementId::Literal(Lit::new(v, !value[v as usize])));
        search.emit_elements(lits);
        return Ok(());
    }
    for b in [true, false] {
        value[depth + 1] = b;
        rec(search, closing, value, depth + 1)?;
    }
    Ok(())
}
