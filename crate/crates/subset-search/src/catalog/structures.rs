//! Simple graphs and digraphs used as payload building blocks.

use std::collections::BTreeSet;

/// Undirected simple graph on vertices `0..n`; edges are kept as `(min, max)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Graph {
    pub n: u32,
    pub edges: Vec<(u32, u32)>,
}

impl Graph {
    pub fn new(n: u32, edges: impl IntoIterator<Item = (u32, u32)>) -> Graph {
        Graph {
            n,
            edges: edges.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect(),
        }
    }

    pub fn validate(&self, out: &mut Vec<String>) {
        let mut seen = BTreeSet::new();
        for &(a, b) in &self.edges {
            if a >= self.n || b >= self.n {
                out.push(format!("edge {{{a},{b}}} leaves the vertex range 0..{}", self.n));
            } else if a == b {
                out.push(format!("self-loop at vertex {a}"));
            } else if a > b {
                out.push(format!("edge {{{a},{b}}} is not stored as (min,max)"));
            } else if !seen.insert((a, b)) {
                out.push(format!("duplicate edge {{{a},{b}}}"));
            }
        }
    }

    pub fn adjacency(&self) -> Vec<Vec<u32>> {
        let mut adj = vec![Vec::new(); self.n as usize];
        for &(a, b) in &self.edges {
            adj[a as usize].push(b);
            adj[b as usize].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    pub fn adjacency_matrix(&self) -> Vec<Vec<bool>> {
        let n = self.n as usize;
        let mut m = vec![vec![false; n]; n];
        for &(a, b) in &self.edges {
            m[a as usize][b as usize] = true;
            m[b as usize][a as usize] = true;
        }
        m
    }

    /// Complement graph with edges listed in lexicographic order.
    pub fn complement(&self) -> Graph {
        let m = self.adjacency_matrix();
        let mut edges = Vec::new();
        for a in 0..self.n {
            for b in a + 1..self.n {
                if !m[a as usize][b as usize] {
                    edges.push((a, b));
                }
            }
        }
        Graph { n: self.n, edges }
    }

    pub fn degree(&self, v: u32) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }
}

/// Directed simple graph on vertices `0..n` (no loops, no parallel arcs).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Digraph {
    pub n: u32,
    pub arcs: Vec<(u32, u32)>,
}

impl Digraph {
    pub fn new(n: u32, arcs: impl IntoIterator<Item = (u32, u32)>) -> Digraph {
        Digraph {
            n,
            arcs: arcs.into_iter().collect(),
        }
    }

    pub fn validate(&self, out: &mut Vec<String>) {
        let mut seen = BTreeSet::new();
        for &(a, b) in &self.arcs {
            if a >= self.n || b >= self.n {
                out.push(format!("arc ({a},{b}) leaves the vertex range 0..{}", self.n));
            } else if a == b {
                out.push(format!("self-loop at vertex {a}"));
            } else if !seen.insert((a, b)) {
                out.push(format!("duplicate arc ({a},{b})"));
            }
        }
    }

    /// Out-neighbours with the index of the connecting arc.
    pub fn out_arcs(&self) -> Vec<Vec<(u32, usize)>> {
        let mut adj = vec![Vec::new(); self.n as usize];
        for (i, &(a, b)) in self.arcs.iter().enumerate() {
            adj[a as usize].push((b, i));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    pub fn in_degree(&self, v: u32) -> usize {
        self.arcs.iter().filter(|a| a.1 == v).count()
    }

    pub fn out_degree(&self, v: u32) -> usize {
        self.arcs.iter().filter(|a| a.0 == v).count()
    }

    /// Some directed cycle avoiding removed vertices and arcs, as the list of
    /// its arc indices, or `None` if the remaining digraph is acyclic.
    pub fn find_cycle(&self, vertex_gone: &[bool], arc_gone: &[bool]) -> Option<Vec<usize>> {
        let n = self.n as usize;
        let adj = self.out_arcs();
        // 0 = unvisited, 1 = on stack, 2 = done
        let mut color = vec![0u8; n];
        let mut parent_arc = vec![usize::MAX; n];
        for root in 0..n {
            if color[root] != 0 || vertex_gone[root] {
                continue;
            }
            let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
            color[root] = 1;
            while let Some(&mut (v, ref mut next)) = stack.last_mut() {
                if *next < adj[v].len() {
                    let (w, arc) = adj[v][*next];
                    *next += 1;
                    let w = w as usize;
                    if vertex_gone[w] || arc_gone[arc] {
                        continue;
                    }
                    match color[w] {
                        0 => {
                            color[w] = 1;
                            parent_arc[w] = arc;
                            stack.push((w, 0));
                        }
                        1 => {
                            let mut cycle = vec![arc];
                            let mut x = v;
                            while x != w {
                                let a = parent_arc[x];
                                cycle.push(a);
                                x = self.arcs[a].0 as usize;
                            }
                            cycle.reverse();
                            return Some(cycle);
                        }
                        _ => {}
                    }
                } else {
                    color[v] = 2;
                    stack.pop();
                }
            }
        }
        None
    }

    pub fn is_acyclic(&self, vertex_gone: &[bool], arc_gone: &[bool]) -> bool {
        self.find_cycle(vertex_gone, arc_gone).is_none()
    }
}

/// Kahn-style acyclicity test, coded independently of `find_cycle` so the
/// two can cross-check each other.
pub fn acyclic_by_peeling(n: usize, arcs: &[(u32, u32)]) -> bool {
    let mut indeg = vec![0usize; n];
    let mut out = vec![Vec::new(); n];
    for &(a, b) in arcs {
        indeg[b as usize] += 1;
        out[a as usize].push(b as usize);
    }
    let mut queue: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut removed = 0;
    while let Some(v) = queue.pop() {
        removed += 1;
        for &w in &out[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                queue.push(w);
            }
        }
    }
    removed == n
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn cycle_is_reported_as_closed_arc_sequence() {
        let g = Digraph::new(4, [(0, 1), (1, 2), (2, 0), (2, 3)]);
        let cycle = g.find_cycle(&[false; 4], &[false; 4]).unwrap();
        assert_eq!(cycle.len(), 3);
        for w in 0..cycle.len() {
            let a = g.arcs[cycle[w]];
            let b = g.arcs[cycle[(w + 1) % cycle.len()]];
            assert_eq!(a.1, b.0);
        }
        assert!(g.is_acyclic(&[false; 4], &[true, false, false, false]));
        assert!(g.is_acyclic(&[true, false, false, false], &[false; 4]));
    }

    #[test]
    fn complement_of_triangle_is_empty() {
        let k3 = Graph::new(3, [(0, 1), (1, 2), (0, 2)]);
        assert!(k3.complement().edges.is_empty());
    }

    proptest! {
        #[test]
        fn dfs_and_peeling_agree(arcs in proptest::collection::btree_set((0u32..6, 0u32..6), 0..14)) {
            let arcs: Vec<(u32, u32)> = arcs.into_iter().filter(|(a, b)| a != b).collect();
            let g = Digraph::new(6, arcs.clone());
            let gone_v = [false; 6];
            let gone_a = vec![false; arcs.len()];
            prop_assert_eq!(g.is_acyclic(&gone_v, &gone_a), acyclic_by_peeling(6, &arcs));
        }
    }
}
