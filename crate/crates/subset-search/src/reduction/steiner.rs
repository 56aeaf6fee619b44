use super::sat::cnf_of;
use crate::catalog::{Graph, Instance, Payload, Steiner};
use crate::element::{ElementId, Lit};
use crate::error::{Error, Result};

type Built = (Payload, Vec<(ElementId, ElementId)>);

/// `s = c_0 - {ℓ_i | ¬ℓ_i} - c_i - ... - c_n = t`, and every clause terminal
/// hangs off each of its literals by a path of `2n+1` unit edges.
pub(super) fn three_sat_to_steiner(x: &Instance) -> Result<Built> {
    let cnf = cnf_of(x);
    let n = cnf.num_vars;
    let m = cnf.clauses.len() as u64;
    let span = 2 * n as u64;
    let hang = span + 1;
    let literal = |l: Lit| 1 + 2 * (l.var() as u64 - 1) + l.is_negated() as u64;
    // chain vertices c_1..c_{n-1} follow the literals; c_n = t comes last among them
    let chain = move |i: u32| match i {
        0 => 0,
        i => 2 * n as u64 + i as u64,
    };
    let first_clause = chain(n.max(1)) + 1;
    let occurrences: u64 = cnf.clauses.iter().map(|c| c.len() as u64).sum();
    let total = first_clause + m + occurrences * span;
    let total = u32::try_from(total).map_err(|_| Error::ConstructionOverflow("vertex count".into()))?;
    let mut edges: Vec<(u64, u64)> = Vec::new();
    for i in 1..=n {
        for l in [Lit::pos(i), Lit::neg(i)] {
            edges.push((chain(i - 1), literal(l)));
            edges.push((literal(l), chain(i)));
        }
    }
    let mut next = first_clause + m;
    for (j, clause) in cnf.clauses.iter().enumerate() {
        let terminal = first_clause + j as u64;
        for &l in clause {
            let mut prev = literal(l);
            for _ in 0..span {
                edges.push((prev, next));
                prev = next;
                next += 1;
            }
            edges.push((prev, terminal));
        }
    }
    let narrow = |v: u64| v as u32;
    let mut terminals = vec![0, narrow(chain(n))];
    if n == 0 {
        terminals.pop();
    }
    terminals.extend((0..m).map(|j| narrow(first_clause + j)));
    let edges: Vec<(u32, u32)> = edges.into_iter().map(|(a, b)| (narrow(a), narrow(b))).collect();
    let k = span
        .checked_add(m.checked_mul(hang).ok_or_else(|| Error::ConstructionOverflow("bound".into()))?)
        .and_then(|k| i64::try_from(k).ok())
        .ok_or_else(|| Error::ConstructionOverflow("bound".into()))?;
    let graph = Graph::new(total, edges);
    let weights = vec![1; graph.edges.len()];
    let pairs = (1..=n)
        .flat_map(|i| [Lit::pos(i), Lit::neg(i)])
        .map(|l| {
            (
                ElementId::Literal(l),
                ElementId::edge(narrow(chain(l.var() - 1)), narrow(literal(l))),
            )
        })
        .collect();
    let target = Steiner {
        graph,
        weights,
        terminals,
        k,
    };
    Ok((Payload::SteinerTree(target), pairs))
}
