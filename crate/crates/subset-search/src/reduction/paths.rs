use super::sat::cnf_of;
use super::{expect_kind, Embedding, Provenance, Reduced, Reduction};
use crate::catalog::{Digraph, DisjointPaths, Instance, Payload, ProblemKind};
use crate::element::{ElementId, Lit};
use crate::error::{Error, Result};

type Built = (Payload, Vec<(ElementId, ElementId)>);

/// Vertex layout of the 3SAT gadget for two disjoint paths.
struct Layout {
    n: u32,
    m: u32,
}

impl Layout {
    const S1: u32 = 0;
    const T1: u32 = 1;
    const S2: u32 = 2;
    const T2: u32 = 3;

    fn block(&self) -> u32 {
        2 + 8 * self.m
    }

    fn base(&self, i: u32) -> u32 {
        4 + (i - 1) * self.block()
    }

    fn entry(&self, i: u32) -> u32 {
        self.base(i)
    }

    fn exit(&self, i: u32) -> u32 {
        self.base(i) + 1
    }

    /// Position `1 ≤ p ≤ 4m` on the path of literal `l`.
    fn lane(&self, l: Lit, p: u32) -> u32 {
        self.base(l.var()) + 2 + if l.is_negated() { 4 * self.m } else { 0 } + (p - 1)
    }

    fn clause_in(&self, j: u32) -> u32 {
        4 + self.n * self.block() + 2 * (j - 1)
    }

    fn clause_out(&self, j: u32) -> u32 {
        self.clause_in(j) + 1
    }

    fn total(&self) -> Option<u32> {
        self.n.checked_mul(self.m.checked_mul(8)?.checked_add(2)?)?.checked_add(4 + 2 * self.m)
    }
}

/// The first path walks the variables, picking the lane of the true literal.
/// The second runs the clauses `C_1 .. C_m`; clause `C_j` may detour through
/// positions `4j-3, 4j-2` of the lane of a negated member.
///
/// Known defect: the first path can leave a lane through a clause pair and
/// rejoin a later variable, and the second path can then skip clauses along
/// a free lane, so solution families are not preserved in general.
pub(super) fn three_sat_to_two_paths(x: &Instance) -> Result<Built> {
    let cnf = cnf_of(x);
    if cnf.clauses.is_empty() {
        return Err(Error::Precondition("formula needs at least one clause".into()));
    }
    let m = u32::try_from(cnf.clauses.len()).map_err(|_| Error::ConstructionOverflow("clause count".into()))?;
    let layout = Layout { n: cnf.num_vars, m };
    let total = layout
        .total()
        .ok_or_else(|| Error::ConstructionOverflow("vertex count".into()))?;
    let n = layout.n;
    let width = 4 * m;
    let mut arcs = Vec::new();
    if n == 0 {
        arcs.push((Layout::S1, Layout::T1));
    } else {
        arcs.push((Layout::S1, layout.entry(1)));
    }
    for i in 1..=n {
        for l in [Lit::pos(i), Lit::neg(i)] {
            arcs.push((layout.entry(i), layout.lane(l, 1)));
            for p in 1..width {
                arcs.push((layout.lane(l, p), layout.lane(l, p + 1)));
            }
            arcs.push((layout.lane(l, width), layout.exit(i)));
        }
        let next = if i < n { layout.entry(i + 1) } else { Layout::T1 };
        arcs.push((layout.exit(i), next));
    }
    arcs.push((Layout::S2, layout.clause_in(1)));
    for (j, clause) in (1..=m).zip(&cnf.clauses) {
        for &l in clause {
            let lane = l.negate();
            arcs.push((layout.clause_in(j), layout.lane(lane, 4 * j - 3)));
            arcs.push((layout.lane(lane, 4 * j - 2), layout.clause_out(j)));
        }
        let next = if j < m { layout.clause_in(j + 1) } else { Layout::T2 };
        arcs.push((layout.clause_out(j), next));
    }
    let pairs = (1..=n)
        .flat_map(|i| [Lit::pos(i), Lit::neg(i)])
        .map(|l| (ElementId::Literal(l), ElementId::Arc(layout.entry(l.var()), layout.lane(l, 1))))
        .collect();
    let target = DisjointPaths {
        digraph: Digraph::new(total, arcs),
        pairs: vec![(Layout::S1, Layout::T1), (Layout::S2, Layout::T2)],
    };
    Ok((Payload::TwoDisjointPaths(target), pairs))
}

/// Adds `k - 2` terminal pairs joined by a direct arc each.
pub struct PadDisjointPaths {
    k: u32,
}

impl PadDisjointPaths {
    /// `k` is clamped to at least 2.
    pub fn new(k: u32) -> PadDisjointPaths {
        PadDisjointPaths { k: k.max(2) }
    }
}

impl Reduction for PadDisjointPaths {
    fn id(&self) -> String {
        if self.k == 3 {
            "2ddp_to_kddp".into()
        } else {
            format!("2ddp_to_{}ddp", self.k)
        }
    }

    fn source(&self) -> ProblemKind {
        ProblemKind::DirectedTwoDisjointPath
    }

    fn target(&self) -> ProblemKind {
        ProblemKind::DirectedKDisjointPath
    }

    fn provenance(&self) -> Provenance {
        Provenance::Catalog
    }

    fn apply(&self, x: &Instance) -> Result<Reduced> {
        expect_kind(x, self.source())?;
        let Payload::TwoDisjointPaths(d) = x.payload() else {
            unreachable!("kind checked above")
        };
        let extra = self.k - 2;
        let total = extra
            .checked_mul(2)
            .and_then(|e| e.checked_add(d.digraph.n))
            .ok_or_else(|| Error::ConstructionOverflow("vertex count".into()))?;
        let mut digraph = d.digraph.clone();
        digraph.n = total;
        let mut pairs = d.pairs.clone();
        for r in 0..extra {
            let s = d.digraph.n + 2 * r;
            digraph.arcs.push((s, s + 1));
            pairs.push((s, s + 1));
        }
        let target = Instance::new(Payload::KDisjointPaths(DisjointPaths { digraph, pairs }))?;
        let embedding = Embedding::new(
            d.digraph
                .arcs
                .iter()
                .map(|&(a, b)| (ElementId::Arc(a, b), ElementId::Arc(a, b))),
        )?;
        embedding.check(x.universe(), target.universe())?;
        Ok(Reduced { target, embedding })
    }
}
