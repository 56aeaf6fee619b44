use crate::catalog::{Cnf, Graph, GraphBound, Instance, Payload};
use crate::element::{ElementId, Lit};
use crate::error::{Error, Result};

type Built = (Payload, Vec<(ElementId, ElementId)>);

pub(super) fn cnf_of(x: &Instance) -> &Cnf {
    match x.payload() {
        Payload::Sat(c) | Payload::ThreeSat(c) => c,
        other => unreachable!("kind checked before construction, got {}", other.kind()),
    }
}

/// Index of a literal among `x_1, ¬x_1, x_2, ¬x_2, ...`.
pub(super) fn literal_index(l: Lit) -> u32 {
    2 * (l.var() - 1) + l.is_negated() as u32
}

pub(super) fn all_literals(n: u32) -> impl Iterator<Item = Lit> {
    (1..=n).flat_map(|v| [Lit::pos(v), Lit::neg(v)])
}

fn identity_on_literals(n: u32) -> Vec<(ElementId, ElementId)> {
    all_literals(n).map(|l| (ElementId::Literal(l), ElementId::Literal(l))).collect()
}

pub(super) fn sat_to_three_sat(x: &Instance) -> Result<Built> {
    let cnf = cnf_of(x);
    let mut next = cnf.num_vars;
    let mut fresh = || -> Result<u32> {
        next = next
            .checked_add(1)
            .filter(|&v| v <= i32::MAX as u32)
            .ok_or_else(|| Error::ConstructionOverflow("helper variable index".into()))?;
        Ok(next)
    };
    let mut clauses: Vec<Vec<Lit>> = Vec::new();
    for clause in &cnf.clauses {
        match clause.len() {
            0 => {
                let h = [fresh()?, fresh()?, fresh()?];
                for signs in 0..8u32 {
                    clauses.push((0..3).map(|b| Lit::new(h[b], signs >> b & 1 == 1)).collect());
                }
            }
            1 => {
                let (h1, h2) = (fresh()?, fresh()?);
                for signs in 0..4u32 {
                    clauses.push(vec![clause[0], Lit::new(h1, signs & 1 == 1), Lit::new(h2, signs & 2 == 2)]);
                }
            }
            2 => {
                let h = fresh()?;
                clauses.push(vec![clause[0], clause[1], Lit::pos(h)]);
                clauses.push(vec![clause[0], clause[1], Lit::neg(h)]);
            }
            3 => clauses.push(clause.clone()),
            _ => {
                let mut rest = clause.clone();
                while rest.len() > 3 {
                    let h = fresh()?;
                    clauses.push(vec![rest[0], rest[1], Lit::pos(h)]);
                    let mut tail = vec![Lit::neg(h)];
                    tail.extend_from_slice(&rest[2..]);
                    rest = tail;
                }
                clauses.push(rest);
            }
        }
    }
    let out = Cnf { num_vars: next, clauses };
    Ok((Payload::ThreeSat(out), identity_on_literals(cnf.num_vars)))
}

/// Literal vertices `ℓ_i = 2(i-1)`, `¬ℓ_i = 2(i-1)+1`, then one triangle per
/// clause. `wire` picks which literal vertex a triangle corner attaches to.
fn literal_triangles(cnf: &Cnf, wire: fn(Lit) -> Lit) -> Result<Graph> {
    let n = cnf.num_vars;
    let m = cnf.clauses.len() as u32;
    let total = m
        .checked_mul(3)
        .and_then(|t| t.checked_add(n.checked_mul(2)?))
        .ok_or_else(|| Error::ConstructionOverflow("vertex count".into()))?;
    let mut edges = Vec::new();
    for v in 0..n {
        edges.push((2 * v, 2 * v + 1));
    }
    for (j, clause) in cnf.clauses.iter().enumerate() {
        let base = 2 * n + 3 * j as u32;
        edges.extend([(base, base + 1), (base, base + 2), (base + 1, base + 2)]);
        for (p, &l) in clause.iter().enumerate() {
            edges.push((base + p as u32, literal_index(wire(l))));
        }
    }
    Ok(Graph::new(total, edges))
}

fn literal_vertices(n: u32) -> Vec<(ElementId, ElementId)> {
    all_literals(n)
        .map(|l| (ElementId::Literal(l), ElementId::Vertex(literal_index(l))))
        .collect()
}

pub(super) fn three_sat_to_vertex_cover(x: &Instance) -> Result<Built> {
    let cnf = cnf_of(x);
    let graph = literal_triangles(cnf, |l| l)?;
    let k = cnf.num_vars as i64 + 2 * cnf.clauses.len() as i64;
    Ok((Payload::VertexCover(GraphBound { graph, k }), literal_vertices(cnf.num_vars)))
}

/// Same graph as [`three_sat_to_vertex_cover`] with the bound lowered by one.
pub(super) fn three_sat_to_vertex_cover_tight(x: &Instance) -> Result<Built> {
    let (payload, pairs) = three_sat_to_vertex_cover(x)?;
    let Payload::VertexCover(mut g) = payload else { unreachable!() };
    g.k -= 1;
    Ok((Payload::VertexCover(g), pairs))
}

pub(super) fn three_sat_to_independent_set(x: &Instance) -> Result<Built> {
    let cnf = cnf_of(x);
    let graph = literal_triangles(cnf, Lit::negate)?;
    let k = cnf.num_vars as i64 + cnf.clauses.len() as i64;
    Ok((Payload::IndependentSet(GraphBound { graph, k }), literal_vertices(cnf.num_vars)))
}
