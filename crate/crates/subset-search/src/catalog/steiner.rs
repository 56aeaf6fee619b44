use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};

use super::{check_nonnegative, chosen, LopModel, Model, Steiner};
use crate::element::{ElementId, Universe};
use crate::search::{Search, Step};

pub(super) struct SteinerModel<'a>(pub &'a Steiner);

impl SteinerModel<'_> {
    fn is_tree_spanning_terminals(&self, u: &Universe, mask: &[bool]) -> bool {
        let n = self.0.graph.n as usize;
        let edges: Vec<(usize, usize)> = chosen(mask)
            .map(|i| match u.get(i) {
                ElementId::Edge(a, b) => (a as usize, b as usize),
                other => unreachable!("steiner universe holds {other}"),
            })
            .collect();
        let mut touched = vec![false; n];
        for &t in &self.0.terminals {
            touched[t as usize] = true;
        }
        for &(a, b) in &edges {
            touched[a] = true;
            touched[b] = true;
        }
        let vertex_count = touched.iter().filter(|&&t| t).count();
        if edges.len() + 1 != vertex_count {
            return false;
        }
        // union-find: no cycle among the chosen edges + count == vertices - 1 => tree
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut Vec<usize>, x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let nx = p[y];
                p[y] = r;
                y = nx;
            }
            r
        }
        for &(a, b) in &edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                return false;
            }
            parent[ra] = rb;
        }
        true
    }

    fn weight_of(&self, u: &Universe, mask: &[bool]) -> i128 {
        chosen(mask)
            .map(|i| {
                let ElementId::Edge(a, b) = u.get(i) else {
                    unreachable!("steiner universe holds edges")
                };
                let j = self.0.graph.edges.iter().position(|&e| e == (a, b)).expect("edge present");
                self.0.weights[j] as i128
            })
            .sum()
    }
}

impl Model for SteinerModel<'_> {
    fn validate(&self, out: &mut Vec<String>) {
        let s = self.0;
        s.graph.validate(out);
        if s.weights.len() != s.graph.edges.len() {
            out.push(format!("{} weights for {} edges", s.weights.len(), s.graph.edges.len()));
        }
        check_nonnegative("edge weights", &s.weights, out);
        if s.terminals.is_empty() {
            out.push("at least one terminal required".into());
        }
        let mut seen = BTreeSet::new();
        for &t in &s.terminals {
            if t >= s.graph.n {
                out.push(format!("terminal {t} outside the vertex range"));
            } else if !seen.insert(t) {
                out.push(format!("terminal {t} listed twice"));
            }
        }
    }

    fn elements(&self) -> Vec<ElementId> {
        self.0.graph.edges.iter().map(|&(a, b)| ElementId::Edge(a, b)).collect()
    }

    fn accepts(&self, u: &Universe, mask: &[bool]) -> bool {
        self.is_tree_spanning_terminals(u, mask) && self.weight_of(u, mask) <= self.0.k as i128
    }

    fn enumerate(&self, search: &mut Search<'_>) -> Step {
        TreeGrowth::new(self.0, Some(self.0.k as i128)).run(search)
    }

    fn lop(&self) -> Option<&dyn LopModel> {
        Some(self)
    }
}

impl LopModel for SteinerModel<'_> {
    fn feasible(&self, u: &Universe, mask: &[bool]) -> bool {
        self.is_tree_spanning_terminals(u, mask)
    }

    fn cost(&self, e: ElementId) -> i64 {
        let ElementId::Edge(a, b) = e else {
            unreachable!("steiner universe holds edges")
        };
        let j = self.0.graph.edges.iter().position(|&x| x == (a, b)).expect("edge present");
        self.0.weights[j]
    }

    fn threshold(&self) -> i64 {
        self.0.k
    }

    fn enumerate_feasible(&self, search: &mut Search<'_>) -> Step {
        TreeGrowth::new(self.0, None).run(search)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum EdgeState {
    Open,
    In,
    Out,
}

/// Grows trees from the first terminal, branching include/exclude on the
/// first frontier edge. Each tree containing the root is reached at exactly
/// one leaf.
struct TreeGrowth<'a> {
    inst: &'a Steiner,
    adj: Vec<Vec<(usize, usize)>>,
    limit: Option<i128>,
}

impl<'a> TreeGrowth<'a> {
    fn new(inst: &'a Steiner, limit: Option<i128>) -> Self {
        let n = inst.graph.n as usize;
        let mut adj = vec![Vec::new(); n];
        for (i, &(a, b)) in inst.graph.edges.iter().enumerate() {
            adj[a as usize].push((b as usize, i));
            adj[b as usize].push((a as usize, i));
        }
        TreeGrowth { inst, adj, limit }
    }

    fn run(&self, search: &mut Search<'_>) -> Step {
        let n = self.inst.graph.n as usize;
        let root = *self.inst.terminals.iter().min().expect("validated: terminals nonempty") as usize;
        let mut in_tree = vec![false; n];
        in_tree[root] = true;
        let mut states = vec![EdgeState::Open; self.inst.graph.edges.len()];
        self.grow(search, &mut in_tree, &mut states, 0)
    }

    /// Doubled distances from `sources` over edges that are not excluded.
    fn distances(&self, sources: &[usize], states: &[EdgeState]) -> Vec<i128> {
        let n = self.adj.len();
        let mut dist = vec![i128::MAX; n];
        let mut heap = BinaryHeap::new();
        for &s in sources {
            dist[s] = 0;
            heap.push(Reverse((0i128, s)));
        }
        while let Some(Reverse((d, v))) = heap.pop() {
            if d > dist[v] {
                continue;
            }
            for &(w, e) in &self.adj[v] {
                if states[e] == EdgeState::Out {
                    continue;
                }
                let nd = d + 2 * self.inst.weights[e] as i128;
                if nd < dist[w] {
                    dist[w] = nd;
                    heap.push(Reverse((nd, w)));
                }
            }
        }
        dist
    }

    /// Admissible lower bound (doubled) on the weight still needed, or
    /// `None` if some terminal can no longer be reached.
    fn remaining_bound(&self, in_tree: &[bool], states: &[EdgeState]) -> Option<i128> {
        let tree: Vec<usize> = (0..in_tree.len()).filter(|&v| in_tree[v]).collect();
        let from_tree = self.distances(&tree, states);
        let pending: Vec<usize> = self
            .inst
            .terminals
            .iter()
            .map(|&t| t as usize)
            .filter(|&t| !in_tree[t])
            .collect();
        let mut bound = 0i128;
        for &t in &pending {
            if from_tree[t] == i128::MAX {
                return None;
            }
            if self.limit.is_none() {
                continue;
            }
            let from_t = self.distances(&[t], states);
            let nearest_terminal = self
                .inst
                .terminals
                .iter()
                .map(|&x| x as usize)
                .filter(|&x| x != t)
                .map(|x| from_t[x])
                .min()
                .unwrap_or(i128::MAX);
            // radius r_t with 2 r_t = min(2 d(t, tree), d(t, t'))
            let doubled_radius = from_tree[t].min(nearest_terminal / 2);
            bound += doubled_radius;
        }
        Some(bound)
    }

    fn grow(
        &self,
        search: &mut Search<'_>,
        in_tree: &mut Vec<bool>,
        states: &mut Vec<EdgeState>,
        spent: i128,
    ) -> Step {
        search.visit()?;
        if let Some(lim) = self.limit {
            if spent > lim {
                return Ok(());
            }
        }
        let Some(bound) = self.remaining_bound(in_tree, states) else {
            return Ok(());
        };
        if let Some(lim) = self.limit {
            if 2 * spent + bound > 2 * lim {
                return Ok(());
            }
        }
        let frontier = (0..states.len()).find(|&e| {
            let (a, b) = self.inst.graph.edges[e];
            states[e] == EdgeState::Open && (in_tree[a as usize] != in_tree[b as usize])
        });
        let Some(e) = frontier else {
            if self.inst.terminals.iter().all(|&t| in_tree[t as usize]) {
                let edges = &self.inst.graph.edges;
                search.emit_elements(
                    (0..states.len())
                        .filter(|&i| states[i] == EdgeState::In)
                        .map(|i| ElementId::Edge(edges[i].0, edges[i].1)),
                );
            }
            return Ok(());
        };
        let (a, b) = self.inst.graph.edges[e];
        let fresh = if in_tree[a as usize] { b as usize } else { a as usize };
        states[e] = EdgeState::In;
        in_tree[fresh] = true;
        let r = self.grow(search, in_tree, states, spent + self.inst.weights[e] as i128);
        in_tree[fresh] = false;
        states[e] = EdgeState::Out;
        let r = r.and_then(|_| self.grow(search, in_tree, states, spent));
        states[e] = EdgeState::Open;
        r
    }
}
