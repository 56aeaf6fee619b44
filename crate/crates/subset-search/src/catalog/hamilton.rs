use super::{check_nonnegative, chosen, Digraph, Graph, HamiltonianPath, LopModel, Model, Tsp};
use crate::element::{ElementId, Universe};
use crate::search::{Search, Step};

fn arc_elements(g: &Digraph) -> Vec<ElementId> {
    g.arcs.iter().map(|&(a, b)| ElementId::Arc(a, b)).collect()
}

fn edge_elements(g: &Graph) -> Vec<ElementId> {
    g.edges.iter().map(|&(a, b)| ElementId::Edge(a, b)).collect()
}

fn chosen_arcs(u: &Universe, mask: &[bool]) -> Vec<(u32, u32)> {
    chosen(mask)
        .map(|i| match u.get(i) {
            ElementId::Arc(a, b) => (a, b),
            other => unreachable!("arc universe holds {other}"),
        })
        .collect()
}

fn chosen_edges(u: &Universe, mask: &[bool]) -> Vec<(u32, u32)> {
    chosen(mask)
        .map(|i| match u.get(i) {
            ElementId::Edge(a, b) => (a, b),
            other => unreachable!("edge universe holds {other}"),
        })
        .collect()
}

/// Walks the unique successor chain from `start`; `None` if some vertex has
/// two outgoing or two incoming chosen arcs.
fn successor_table(n: usize, arcs: &[(u32, u32)]) -> Option<Vec<Option<usize>>> {
    let mut next = vec![None; n];
    let mut indeg = vec![0usize; n];
    for &(a, b) in arcs {
        if next[a as usize].replace(b as usize).is_some() {
            return None;
        }
        indeg[b as usize] += 1;
        if indeg[b as usize] > 1 {
            return None;
        }
    }
    Some(next)
}

/// Arc set of a Hamiltonian path from `s` to `t`.
pub(crate) fn is_hamiltonian_path(n: usize, arcs: &[(u32, u32)], s: usize, t: usize) -> bool {
    if arcs.len() + 1 != n {
        return false;
    }
    let Some(next) = successor_table(n, arcs) else {
        return false;
    };
    let mut seen = vec![false; n];
    let mut v = s;
    seen[v] = true;
    for _ in 1..n {
        match next[v] {
            Some(w) if !seen[w] => {
                seen[w] = true;
                v = w;
            }
            _ => return false,
        }
    }
    v == t && next[t].is_none()
}

/// Arc set of a directed Hamiltonian cycle.
pub(crate) fn is_directed_hamiltonian_cycle(n: usize, arcs: &[(u32, u32)]) -> bool {
    if n < 2 || arcs.len() != n {
        return false;
    }
    let Some(next) = successor_table(n, arcs) else {
        return false;
    };
    let mut v = 0;
    for step in 1..=n {
        match next[v] {
            Some(w) => v = w,
            None => return false,
        }
        if v == 0 && step < n {
            return false;
        }
    }
    v == 0
}

/// Edge set of an undirected Hamiltonian cycle (needs at least three vertices).
pub(crate) fn is_undirected_hamiltonian_cycle(n: usize, edges: &[(u32, u32)]) -> bool {
    if n < 3 || edges.len() != n {
        return false;
    }
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a as usize].push(b as usize);
        adj[b as usize].push(a as usize);
    }
    if adj.iter().any(|l| l.len() != 2) {
        return false;
    }
    let (mut prev, mut v) = (0usize, adj[0][0]);
    let mut steps = 1;
    while v != 0 {
        let w = if adj[v][0] == prev { adj[v][1] } else { adj[v][0] };
        prev = v;
        v = w;
        steps += 1;
    }
    steps == n
}

/// Directed DFS shared by the path and cycle kinds. `close_to` = `Some(start)`
/// for cycles (the last vertex must have an arc back), `sink` for paths.
struct DirectedWalk<'a> {
    out: Vec<Vec<(u32, usize)>>,
    inn: Vec<Vec<u32>>,
    arcs: &'a [(u32, u32)],
    sink: Option<usize>,
    closing: Option<usize>,
}

impl DirectedWalk<'_> {
    fn new(g: &Digraph, sink: Option<usize>, closing: Option<usize>) -> DirectedWalk<'_> {
        let mut inn = vec![Vec::new(); g.n as usize];
        for &(a, b) in &g.arcs {
            inn[b as usize].push(a);
        }
        DirectedWalk {
            out: g.out_arcs(),
            inn,
            arcs: &g.arcs,
            sink,
            closing,
        }
    }

    /// Every unvisited vertex still needs a way in and, unless it is the
    /// sink, a way out.
    fn hopeless(&self, visited: &[bool], end: usize) -> bool {
        (0..visited.len()).any(|w| {
            if visited[w] {
                return false;
            }
            let way_in = self.inn[w].iter().any(|&p| !visited[p as usize] || p as usize == end);
            let way_out = Some(w) == self.sink
                || self.out[w]
                    .iter()
                    .any(|&(q, _)| !visited[q as usize] || Some(q as usize) == self.closing);
            !way_in || !way_out
        })
    }

    fn extend(&self, search: &mut Search<'_>, visited: &mut Vec<bool>, path: &mut Vec<usize>, end: usize) -> Step {
        search.visit()?;
        let n = visited.len();
        if path.len() + 1 == n {
            match self.closing {
                Some(start) => {
                    if let Some(&(_, closing_arc)) = self.out[end].iter().find(|&&(w, _)| w as usize == start) {
                        let mut arcs: Vec<usize> = path.clone();
                        arcs.push(closing_arc);
                        self.emit(search, &arcs);
                    }
                }
                None => {
                    if Some(end) == self.sink {
                        self.emit(search, path);
                    }
                }
            }
            return Ok(());
        }
        if self.hopeless(visited, end) {
            return Ok(());
        }
        for &(w, arc) in &self.out[end] {
            let w = w as usize;
            if visited[w] || (Some(w) == self.sink && path.len() + 2 < n) {
                continue;
            }
            visited[w] = true;
            path.push(arc);
            let r = self.extend(search, visited, path, w);
            path.pop();
            visited[w] = false;
            r?;
        }
        Ok(())
    }

    fn emit(&self, search: &mut Search<'_>, arc_ids: &[usize]) {
        search.emit_elements(arc_ids.iter().map(|&i| ElementId::Arc(self.arcs[i].0, self.arcs[i].1)));
    }

    fn run(&self, search: &mut Search<'_>, n: usize, start: usize) -> Step {
        let mut visited = vec![false; n];
        visited[start] = true;
        self.extend(search, &mut visited, &mut Vec::new(), start)
    }
}

pub(super) struct PathModel<'a>(pub &'a HamiltonianPath);

impl Model for PathModel<'_> {
    fn validate(&self, out: &mut Vec<String>) {
        let h = self.0;
        h.digraph.validate(out);
        if h.source >= h.digraph.n || h.sink >= h.digraph.n {
            out.push("source or sink outside the vertex range".into());
        }
        if h.source == h.sink {
            out.push("source and sink must differ".into());
        }
    }

    fn elements(&self) -> Vec<ElementId> {
        arc_elements(&self.0.digraph)
    }

    fn accepts(&self, u: &Universe, mask: &[bool]) -> bool {
        let h = self.0;
        is_hamiltonian_path(h.digraph.n as usize, &chosen_arcs(u, mask), h.source as usize, h.sink as usize)
    }

    fn enumerate(&self, search: &mut Search<'_>) -> Step {
        let h = self.0;
        let walk = DirectedWalk::new(&h.digraph, Some(h.sink as usize), None);
        walk.run(search, h.digraph.n as usize, h.source as usize)
    }
}

pub(super) struct DirectedCycleModel<'a>(pub &'a Digraph);

impl Model for DirectedCycleModel<'_> {
    fn validate(&self, out: &mut Vec<String>) {
        self.0.validate(out);
    }

    fn elements(&self) -> Vec<ElementId> {
        arc_elements(self.0)
    }

    fn accepts(&self, u: &Universe, mask: &[bool]) -> bool {
        is_directed_hamiltonian_cycle(self.0.n as usize, &chosen_arcs(u, mask))
    }

    fn enumerate(&self, search: &mut Search<'_>) -> Step {
        if self.0.n < 2 {
            return search.visit();
        }
        let walk = DirectedWalk::new(self.0, None, Some(0));
        walk.run(search, self.0.n as usize, 0)
    }
}

/// Undirected cycle DFS over a weighted adjacency matrix; `limit` bounds the
/// total weight (weights are nonnegative).
struct UndirectedTour {
    weight: Vec<Vec<Option<i64>>>,
    limit: Option<i128>,
}

impl UndirectedTour {
    fn usable(&self, a: usize, b: usize, spent: i128) -> bool {
        match (self.weight[a][b], self.limit) {
            (None, _) => false,
            (Some(_), None) => true,
            (Some(w), Some(lim)) => spent + w as i128 <= lim,
        }
    }

    fn hopeless(&self, visited: &[bool], end: usize, spent: i128) -> bool {
        let n = visited.len();
        (0..n).any(|v| {
            if visited[v] {
                return false;
            }
            let exits = (0..n)
                .filter(|&x| x != v && (!visited[x] || x == end || x == 0) && self.usable(v, x, spent))
                .take(2)
                .count();
            exits < 2
        })
    }

    fn extend(
        &self,
        search: &mut Search<'_>,
        visited: &mut Vec<bool>,
        path: &mut Vec<usize>,
        spent: i128,
    ) -> Step {
        search.visit()?;
        let n = visited.len();
        let end = *path.last().expect("path starts at vertex 0");
        if path.len() == n {
            if path[1] < end && self.usable(end, 0, spent) {
                let mut edges: Vec<ElementId> = path
                    .windows(2)
                    .map(|w| ElementId::edge(w[0] as u32, w[1] as u32))
                    .collect();
                edges.push(ElementId::edge(end as u32, 0));
                search.emit_elements(edges);
            }
            return Ok(());
        }
        if self.hopeless(visited, end, spent) {
            return Ok(());
        }
        for w in 0..n {
            if visited[w] || !self.usable(end, w, spent) {
                continue;
            }
            let cost = self.weight[end][w].unwrap_or(0) as i128;
            visited[w] = true;
            path.push(w);
            let r = self.extend(search, visited, path, spent + cost);
            path.pop();
            visited[w] = false;
            r?;
        }
        Ok(())
    }

    fn run(&self, search: &mut Search<'_>) -> Step {
        let n = self.weight.len();
        if n < 3 {
            return search.visit();
        }
        let mut visited = vec![false; n];
        visited[0] = true;
        self.extend(search, &mut visited, &mut vec![0], 0)
    }
}

pub(super) struct UndirectedCycleModel<'a>(pub &'a Graph);

impl Model for UndirectedCycleModel<'_> {
    fn validate(&self, out: &mut Vec<String>) {
        self.0.validate(out);
    }

    fn elements(&self) -> Vec<ElementId> {
        edge_elements(self.0)
    }

    fn accepts(&self, u: &Universe, mask: &[bool]) -> bool {
        is_undirected_hamiltonian_cycle(self.0.n as usize, &chosen_edges(u, mask))
    }

    fn enumerate(&self, search: &mut Search<'_>) -> Step {
        let n = self.0.n as usize;
        let mut weight = vec![vec![None; n]; n];
        for &(a, b) in &self.0.edges {
            weight[a as usize][b as usize] = Some(0);
            weight[b as usize][a as usize] = Some(0);
        }
        UndirectedTour { weight, limit: None }.run(search)
    }
}

pub(super) struct TspModel<'a>(pub &'a Tsp);

impl TspModel<'_> {
    fn matrix(&self) -> Vec<Vec<Option<i64>>> {
        let n = self.0.graph.n as usize;
        let mut weight = vec![vec![None; n]; n];
        for (&(a, b), &w) in self.0.graph.edges.iter().zip(&self.0.weights) {
            weight[a as usize][b as usize] = Some(w);
            weight[b as usize][a as usize] = Some(w);
        }
        weight
    }
}

impl Model for TspModel<'_> {
    fn validate(&self, out: &mut Vec<String>) {
        let t = self.0;
        t.graph.validate(out);
        let n = t.graph.n as u64;
        if t.graph.edges.len() as u64 != n * n.saturating_sub(1) / 2 {
            out.push("graph not complete".into());
        }
        if t.weights.len() != t.graph.edges.len() {
            out.push(format!("{} weights for {} edges", t.weights.len(), t.graph.edges.len()));
        }
        check_nonnegative("edge weights", &t.weights, out);
    }

    fn elements(&self) -> Vec<ElementId> {
        edge_elements(&self.0.graph)
    }

    fn accepts(&self, u: &Universe, mask: &[bool]) -> bool {
        let edges = chosen_edges(u, mask);
        if !is_undirected_hamiltonian_cycle(self.0.graph.n as usize, &edges) {
            return false;
        }
        let m = self.matrix();
        let total: i128 = edges
            .iter()
            .map(|&(a, b)| m[a as usize][b as usize].expect("complete graph") as i128)
            .sum();
        total <= self.0.k as i128
    }

    fn enumerate(&self, search: &mut Search<'_>) -> Step {
        UndirectedTour {
            weight: self.matrix(),
            limit: Some(self.0.k as i128),
        }
        .run(search)
    }

    fn lop(&self) -> Option<&dyn LopModel> {
        Some(self)
    }
}

impl LopModel for TspModel<'_> {
    fn feasible(&self, u: &Universe, mask: &[bool]) -> bool {
        is_undirected_hamiltonian_cycle(self.0.graph.n as usize, &chosen_edges(u, mask))
    }

    fn cost(&self, e: ElementId) -> i64 {
        let ElementId::Edge(a, b) = e else {
            unreachable!("tsp universe holds edges")
        };
        let i = self.0.graph.edges.iter().position(|&x| x == (a, b)).expect("edge present");
        self.0.weights[i]
    }

    fn threshold(&self) -> i64 {
        self.0.k
    }

    fn enumerate_feasible(&self, search: &mut Search<'_>) -> Step {
        UndirectedTour {
            weight: self.matrix(),
            limit: None,
        }
        .run(search)
    }
}
