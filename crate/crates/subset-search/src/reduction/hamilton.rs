use super::sat::cnf_of;
use crate::catalog::{Digraph, Graph, HamiltonianPath, Instance, Payload, Tsp};
use crate::element::{ElementId, Lit};
use crate::error::{Error, Result};

type Built = (Payload, Vec<(ElementId, ElementId)>);

fn overflow(what: &str) -> Error {
    Error::ConstructionOverflow(what.into())
}

/// Vertex layout of the 3SAT gadget digraph.
struct PathLayout {
    n: u32,
    m: u32,
}

impl PathLayout {
    const SOURCE: u32 = 0;
    const SINK: u32 = 1;

    fn width(&self) -> u32 {
        4 * self.m
    }

    /// `x_i^p` for variable `i ≥ 1` and position `1 ≤ p ≤ 4m`.
    fn node(&self, i: u32, p: u32) -> u32 {
        2 + (i - 1) * self.width() + (p - 1)
    }

    fn clause(&self, j: u32) -> u32 {
        2 + self.n * self.width() + (j - 1)
    }

    /// Hub between chain `i` and chain `i+1`; hub 0 is `s`, hub `n` is `t`.
    fn hub(&self, i: u32) -> u32 {
        match i {
            0 => Self::SOURCE,
            i if i == self.n => Self::SINK,
            i => 2 + self.n * self.width() + self.m + (i - 1),
        }
    }

    fn total(&self) -> Option<u32> {
        self.n
            .checked_mul(self.m.checked_mul(4)?)?
            .checked_add(self.m)?
            .checked_add(self.n.saturating_sub(1))?
            .checked_add(2)
    }
}

/// Each variable is a bidirectional path of `4m` vertices; going left to
/// right sets it true. Clause `C_j` taps positions `4j-2` and `4j-1`.
/// Consecutive chains meet in a hub vertex so that a path cannot leave a
/// chain through one end and come back into it later.
pub(super) fn three_sat_to_path(x: &Instance) -> Result<Built> {
    let cnf = cnf_of(x);
    if cnf.clauses.is_empty() {
        return Err(Error::Precondition("formula needs at least one clause".into()));
    }
    let m = u32::try_from(cnf.clauses.len()).map_err(|_| overflow("clause count"))?;
    let layout = PathLayout { n: cnf.num_vars, m };
    let total = layout.total().ok_or_else(|| overflow("vertex count"))?;
    let (n, w) = (layout.n, layout.width());
    let mut arcs = Vec::new();
    for i in 1..=n {
        for end in [1, w] {
            arcs.push((layout.hub(i - 1), layout.node(i, end)));
        }
        for p in 1..w {
            arcs.push((layout.node(i, p), layout.node(i, p + 1)));
            arcs.push((layout.node(i, p + 1), layout.node(i, p)));
        }
        for end in [1, w] {
            arcs.push((layout.node(i, end), layout.hub(i)));
        }
    }
    for (j, clause) in (1..=m).zip(&cnf.clauses) {
        let c = layout.clause(j);
        for &l in clause {
            let (left, right) = (layout.node(l.var(), 4 * j - 2), layout.node(l.var(), 4 * j - 1));
            if l.is_negated() {
                arcs.extend([(right, c), (c, left)]);
            } else {
                arcs.extend([(left, c), (c, right)]);
            }
        }
    }
    let pairs = (1..=n)
        .flat_map(|i| {
            let (a, b) = (layout.node(i, 1), layout.node(i, 2));
            [
                (ElementId::Literal(Lit::pos(i)), ElementId::Arc(a, b)),
                (ElementId::Literal(Lit::neg(i)), ElementId::Arc(b, a)),
            ]
        })
        .collect();
    let target = HamiltonianPath {
        digraph: Digraph::new(total, arcs),
        source: PathLayout::SOURCE,
        sink: PathLayout::SINK,
    };
    Ok((Payload::HamiltonianPath(target), pairs))
}

fn identity_on_arcs(d: &Digraph) -> Vec<(ElementId, ElementId)> {
    d.arcs
        .iter()
        .map(|&(a, b)| (ElementId::Arc(a, b), ElementId::Arc(a, b)))
        .collect()
}

/// Closes the path with the arc `t → s`; needs `s` without in-arcs and `t`
/// without out-arcs.
pub(super) fn path_to_cycle(x: &Instance) -> Result<Built> {
    let Payload::HamiltonianPath(h) = x.payload() else {
        unreachable!("kind checked before construction")
    };
    if h.digraph.in_degree(h.source) != 0 {
        return Err(Error::Precondition(format!("source {} has incoming arcs", h.source)));
    }
    if h.digraph.out_degree(h.sink) != 0 {
        return Err(Error::Precondition(format!("sink {} has outgoing arcs", h.sink)));
    }
    let mut digraph = h.digraph.clone();
    digraph.arcs.push((h.sink, h.source));
    Ok((Payload::HamiltonianCycle(digraph), identity_on_arcs(&h.digraph)))
}

/// Vertex `v` becomes the path `3v - 3v+1 - 3v+2`; arc `(v,w)` becomes the
/// edge `{3v+2, 3w}`.
pub(super) fn directed_to_undirected(x: &Instance) -> Result<Built> {
    let Payload::HamiltonianCycle(d) = x.payload() else {
        unreachable!("kind checked before construction")
    };
    let total = d.n.checked_mul(3).ok_or_else(|| overflow("vertex count"))?;
    let mut edges: Vec<(u32, u32)> = (0..d.n).flat_map(|v| [(3 * v, 3 * v + 1), (3 * v + 1, 3 * v + 2)]).collect();
    edges.extend(d.arcs.iter().map(|&(v, w)| (3 * v + 2, 3 * w)));
    let pairs = d
        .arcs
        .iter()
        .map(|&(v, w)| (ElementId::Arc(v, w), ElementId::edge(3 * v + 2, 3 * w)))
        .collect();
    Ok((Payload::UndirectedHamiltonianCycle(Graph::new(total, edges)), pairs))
}

/// Complete graph; original edges cost 0, added ones 1, bound 0.
pub(super) fn cycle_to_tsp(x: &Instance) -> Result<Built> {
    let Payload::UndirectedHamiltonianCycle(g) = x.payload() else {
        unreachable!("kind checked before construction")
    };
    let present = g.adjacency_matrix();
    let complete = Graph::new(g.n, (0..g.n).flat_map(|a| (a + 1..g.n).map(move |b| (a, b))));
    let weights = complete
        .edges
        .iter()
        .map(|&(a, b)| if present[a as usize][b as usize] { 0 } else { 1 })
        .collect();
    let pairs = g
        .edges
        .iter()
        .map(|&(a, b)| (ElementId::Edge(a, b), ElementId::Edge(a, b)))
        .collect();
    let target = Tsp {
        graph: complete,
        weights,
        k: 0,
    };
    Ok((Payload::Tsp(target), pairs))
}
