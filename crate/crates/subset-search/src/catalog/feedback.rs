use super::{chosen, DigraphBound, LopModel, Model};
use crate::element::{ElementId, Universe};
use crate::search::{upward_closed, Choice, Search, Step};

fn validate_bound(d: &DigraphBound, out: &mut Vec<String>) {
    d.digraph.validate(out);
    if d.k < 0 {
        out.push(format!("bound k must be nonnegative, found {}", d.k));
    }
}

fn cap(k: i64, n: usize) -> usize {
    k.clamp(0, n as i64) as usize
}

/// Feedback vertex set: delete at most `k` vertices to leave no directed cycle.
pub(super) struct FeedbackVertexModel<'a>(pub &'a DigraphBound);

impl FeedbackVertexModel<'_> {
    fn breaks_all_cycles(&self, mask: &[bool]) -> bool {
        let g = &self.0.digraph;
        g.is_acyclic(mask, &vec![false; g.arcs.len()])
    }

    fn run(&self, search: &mut Search<'_>, max: usize) -> Step {
        let g = &self.0.digraph;
        let no_arcs_gone = vec![false; g.arcs.len()];
        upward_closed(search, g.n as usize, max, &mut |ch| {
            let gone: Vec<bool> = ch.iter().map(|&c| c == Choice::In).collect();
            g.find_cycle(&gone, &no_arcs_gone)
                .map(|cycle| cycle.into_iter().map(|a| g.arcs[a].0 as usize).collect())
        })
    }
}

impl Model for FeedbackVertexModel<'_> {
    fn validate(&self, out: &mut Vec<String>) {
        validate_bound(self.0, out);
    }

    fn elements(&self) -> Vec<ElementId> {
        (0..self.0.digraph.n).map(ElementId::Vertex).collect()
    }

    fn accepts(&self, _u: &Universe, mask: &[bool]) -> bool {
        self.breaks_all_cycles(mask) && chosen(mask).count() as i64 <= self.0.k
    }

    fn enumerate(&self, search: &mut Search<'_>) -> Step {
        self.run(search, cap(self.0.k, self.0.digraph.n as usize))
    }

    fn lop(&self) -> Option<&dyn LopModel> {
        Some(self)
    }
}

impl LopModel for FeedbackVertexModel<'_> {
    fn feasible(&self, _u: &Universe, mask: &[bool]) -> bool {
        self.breaks_all_cycles(mask)
    }

    fn cost(&self, _e: ElementId) -> i64 {
        1
    }

    fn threshold(&self) -> i64 {
        self.0.k
    }

    fn enumerate_feasible(&self, search: &mut Search<'_>) -> Step {
        self.run(search, self.0.digraph.n as usize)
    }
}

/// Feedback arc set: delete at most `k` arcs to leave no directed cycle.
pub(super) struct FeedbackArcModel<'a>(pub &'a DigraphBound);

impl FeedbackArcModel<'_> {
    /// Universe position of every arc, in arc-list order.
    fn positions(&self, u: &Universe) -> Vec<usize> {
        self.0
            .digraph
            .arcs
            .iter()
            .map(|&(a, b)| u.index_of(&ElementId::Arc(a, b)).expect("arc in universe"))
            .collect()
    }

    fn breaks_all_cycles(&self, u: &Universe, mask: &[bool]) -> bool {
        let g = &self.0.digraph;
        let gone: Vec<bool> = self.positions(u).into_iter().map(|p| mask[p]).collect();
        g.is_acyclic(&vec![false; g.n as usize], &gone)
    }

    fn run(&self, search: &mut Search<'_>, max: usize) -> Step {
        let g = &self.0.digraph;
        let pos = self.positions(search.universe());
        let no_vertices_gone = vec![false; g.n as usize];
        upward_closed(search, g.arcs.len(), max, &mut |ch| {
            let gone: Vec<bool> = pos.iter().map(|&p| ch[p] == Choice::In).collect();
            g.find_cycle(&no_vertices_gone, &gone)
                .map(|cycle| cycle.into_iter().map(|a| pos[a]).collect())
        })
    }
}

impl Model for FeedbackArcModel<'_> {
    fn validate(&self, out: &mut Vec<String>) {
        validate_bound(self.0, out);
    }

    fn elements(&self) -> Vec<ElementId> {
        self.0.digraph.arcs.iter().map(|&(a, b)| ElementId::Arc(a, b)).collect()
    }

    fn accepts(&self, u: &Universe, mask: &[bool]) -> bool {
        self.breaks_all_cycles(u, mask) && chosen(mask).count() as i64 <= self.0.k
    }

    fn enumerate(&self, search: &mut Search<'_>) -> Step {
        self.run(search, cap(self.0.k, self.0.digraph.arcs.len()))
    }

    fn lop(&self) -> Option<&dyn LopModel> {
        Some(self)
    }
}

impl LopModel for FeedbackArcModel<'_> {
    fn feasible(&self, u: &Universe, mask: &[bool]) -> bool {
        self.breaks_all_cycles(u, mask)
    }

    fn cost(&self, _e: ElementId) -> i64 {
        1
    }

    fn threshold(&self) -> i64 {
        self.0.k
    }

    fn enumerate_feasible(&self, search: &mut Search<'_>) -> Step {
        self.run(search, self.0.digraph.arcs.len())
    }
}
