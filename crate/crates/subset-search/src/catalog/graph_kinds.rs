use super::{chosen, GraphBound, LopModel, Model};
use crate::element::{ElementId, Universe};
use crate::search::{hitting_sets, include_exclude, Search, Step};

fn vertices(g: &GraphBound) -> Vec<ElementId> {
    (0..g.graph.n).map(ElementId::Vertex).collect()
}

fn validate_graph(g: &GraphBound, out: &mut Vec<String>) {
    g.graph.validate(out);
    if g.k < 0 {
        out.push(format!("bound k must be nonnegative, found {}", g.k));
    }
}

/// Size cap for "at most k" kinds, clipped to the vertex count.
fn cap(k: i64, n: u32) -> usize {
    k.clamp(0, n as i64) as usize
}

pub(super) struct VertexCoverModel<'a>(pub &'a GraphBound);

impl VertexCoverModel<'_> {
    fn covers(&self, mask: &[bool]) -> bool {
        self.0.graph.edges.iter().all(|&(a, b)| mask[a as usize] || mask[b as usize])
    }

    fn run(&self, search: &mut Search<'_>, max: usize) -> Step {
        let edges: Vec<Vec<usize>> = self.0.graph.edges.iter().map(|&(a, b)| vec![a as usize, b as usize]).collect();
        hitting_sets(search, self.0.graph.n as usize, max, &edges)
    }
}

impl Model for VertexCoverModel<'_> {
    fn validate(&self, out: &mut Vec<String>) {
        validate_graph(self.0, out);
    }

    fn elements(&self) -> Vec<ElementId> {
        vertices(self.0)
    }

    fn accepts(&self, _u: &Universe, mask: &[bool]) -> bool {
        self.covers(mask) && chosen(mask).count() as i64 <= self.0.k
    }

    fn enumerate(&self, search: &mut Search<'_>) -> Step {
        self.run(search, cap(self.0.k, self.0.graph.n))
    }

    fn lop(&self) -> Option<&dyn LopModel> {
        Some(self)
    }
}

impl LopModel for VertexCoverModel<'_> {
    fn feasible(&self, _u: &Universe, mask: &[bool]) -> bool {
        self.covers(mask)
    }

    fn cost(&self, _e: ElementId) -> i64 {
        1
    }

    fn threshold(&self) -> i64 {
        self.0.k
    }

    fn enumerate_feasible(&self, search: &mut Search<'_>) -> Step {
        self.run(search, self.0.graph.n as usize)
    }
}

/// Shared backtracking for independent sets and cliques: `compatible[a][b]`
/// says whether `a` and `b` may be chosen together.
fn pairwise_compatible(
    search: &mut Search<'_>,
    compatible: &[Vec<bool>],
    min_size: Option<i64>,
) -> Step {
    let n = compatible.len();
    include_exclude(
        search,
        n,
        &mut |taken, depth| {
            if depth > 0 && taken[depth - 1] {
                let v = depth - 1;
                if (0..v).any(|u| taken[u] && !compatible[u][v]) {
                    return true;
                }
            }
            match min_size {
                Some(k) => ((chosen(taken).count() + (n - depth)) as i64) < k,
                None => false,
            }
        },
        &mut |_| true,
    )
}

pub(super) struct IndependentSetModel<'a>(pub &'a GraphBound);

impl IndependentSetModel<'_> {
    fn independent(&self, mask: &[bool]) -> bool {
        self.0.graph.edges.iter().all(|&(a, b)| !(mask[a as usize] && mask[b as usize]))
    }

    fn compatibility(&self) -> Vec<Vec<bool>> {
        self.0
            .graph
            .adjacency_matrix()
            .into_iter()
            .map(|row| row.into_iter().map(|adjacent| !adjacent).collect())
            .collect()
    }
}

impl Model for IndependentSetModel<'_> {
    fn validate(&self, out: &mut Vec<String>) {
        validate_graph(self.0, out);
    }

    fn elements(&self) -> Vec<ElementId> {
        vertices(self.0)
    }

    fn accepts(&self, _u: &Universe, mask: &[bool]) -> bool {
        self.independent(mask) && chosen(mask).count() as i64 >= self.0.k
    }

    fn enumerate(&self, search: &mut Search<'_>) -> Step {
        pairwise_compatible(search, &self.compatibility(), Some(self.0.k))
    }

    fn lop(&self) -> Option<&dyn LopModel> {
        Some(self)
    }
}

impl LopModel for IndependentSetModel<'_> {
    fn feasible(&self, _u: &Universe, mask: &[bool]) -> bool {
        self.independent(mask)
    }

    fn cost(&self, _e: ElementId) -> i64 {
        -1
    }

    fn threshold(&self) -> i64 {
        -self.0.k
    }

    fn enumerate_feasible(&self, search: &mut Search<'_>) -> Step {
        pairwise_compatible(search, &self.compatibility(), None)
    }
}

pub(super) struct CliqueModel<'a>(pub &'a GraphBound);

impl CliqueModel<'_> {
    fn complete(&self, mask: &[bool]) -> bool {
        let adj = self.0.graph.adjacency_matrix();
        let vs: Vec<usize> = chosen(mask).collect();
        vs.iter()
            .enumerate()
            .all(|(i, &a)| vs[i + 1..].iter().all(|&b| adj[a][b]))
    }
}

impl Model for CliqueModel<'_> {
    fn validate(&self, out: &mut Vec<String>) {
        validate_graph(self.0, out);
    }

    fn elements(&self) -> Vec<ElementId> {
        vertices(self.0)
    }

    fn accepts(&self, _u: &Universe, mask: &[bool]) -> bool {
        self.complete(mask) && chosen(mask).count() as i64 >= self.0.k
    }

    fn enumerate(&self, search: &mut Search<'_>) -> Step {
        pairwise_compatible(search, &self.0.graph.adjacency_matrix(), Some(self.0.k))
    }

    fn lop(&self) -> Option<&dyn LopModel> {
        Some(self)
    }
}

impl LopModel for CliqueModel<'_> {
    fn feasible(&self, _u: &Universe, mask: &[bool]) -> bool {
        self.complete(mask)
    }

    fn cost(&self, _e: ElementId) -> i64 {
        -1
    }

    fn threshold(&self) -> i64 {
        -self.0.k
    }

    fn enumerate_feasible(&self, search: &mut Search<'_>) -> Step {
        pairwise_compatible(search, &self.0.graph.adjacency_matrix(), None)
    }
}

pub(super) struct DominatingSetModel<'a>(pub &'a GraphBound);

impl DominatingSetModel<'_> {
    fn closed_neighbourhoods(&self) -> Vec<Vec<usize>> {
        let adj = self.0.graph.adjacency();
        adj.iter()
            .enumerate()
            .map(|(v, ns)| {
                let mut closed: Vec<usize> = ns.iter().map(|&w| w as usize).collect();
                closed.push(v);
                closed.sort_unstable();
                closed
            })
            .collect()
    }

    fn dominates(&self, mask: &[bool]) -> bool {
        self.closed_neighbourhoods().iter().all(|nb| nb.iter().any(|&w| mask[w]))
    }

    fn run(&self, search: &mut Search<'_>, max: usize) -> Step {
        hitting_sets(search, self.0.graph.n as usize, max, &self.closed_neighbourhoods())
    }
}

impl Model for DominatingSetModel<'_> {
    fn validate(&self, out: &mut Vec<String>) {
        validate_graph(self.0, out);
    }

    fn elements(&self) -> Vec<ElementId> {
        vertices(self.0)
    }

    fn accepts(&self, _u: &Universe, mask: &[bool]) -> bool {
        self.dominates(mask) && chosen(mask).count() as i64 <= self.0.k
    }

    fn enumerate(&self, search: &mut Search<'_>) -> Step {
        self.run(search, cap(self.0.k, self.0.graph.n))
    }

    fn lop(&self) -> Option<&dyn LopModel> {
        Some(self)
    }
}

impl LopModel for DominatingSetModel<'_> {
    fn feasible(&self, _u: &Universe, mask: &[bool]) -> bool {
        self.dominates(mask)
    }

    fn cost(&self, _e: ElementId) -> i64 {
        1
    }

    fn threshold(&self) -> i64 {
        self.0.k
    }

    fn enumerate_feasible(&self, search: &mut Search<'_>) -> Step {
        self.run(search, self.0.graph.n as usize)
    }
}
