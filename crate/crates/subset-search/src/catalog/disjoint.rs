use std::collections::{BTreeSet, VecDeque};

use super::{chosen, DisjointPaths, Model};
use crate::element::{ElementId, Universe};
use crate::search::{Search, Step};

/// Directed vertex-disjoint paths linking every `(s_i, t_i)` pair.
pub(super) struct DisjointPathsModel<'a> {
    pub inst: &'a DisjointPaths,
    pub exactly_two: bool,
}

impl DisjointPathsModel<'_> {
    fn reachable(&self, out: &[Vec<(u32, usize)>], used: &[bool], from: usize, to: usize) -> bool {
        let mut seen = used.to_vec();
        let mut queue = VecDeque::from([from]);
        seen[from] = true;
        while let Some(v) = queue.pop_front() {
            for &(w, _) in &out[v] {
                let w = w as usize;
                if w == to {
                    return true;
                }
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        false
    }
}

impl Model for DisjointPathsModel<'_> {
    fn validate(&self, out: &mut Vec<String>) {
        let d = self.inst;
        d.digraph.validate(out);
        if self.exactly_two && d.pairs.len() != 2 {
            out.push(format!("two terminal pairs required, found {}", d.pairs.len()));
        }
        if d.pairs.is_empty() {
            out.push("at least one terminal pair required".into());
        }
        let mut terminals = BTreeSet::new();
        for &(s, t) in &d.pairs {
            for v in [s, t] {
                if v >= d.digraph.n {
                    out.push(format!("terminal {v} outside the vertex range"));
                } else if !terminals.insert(v) {
                    out.push(format!("terminal {v} used twice"));
                }
            }
        }
    }

    fn elements(&self) -> Vec<ElementId> {
        self.inst.digraph.arcs.iter().map(|&(a, b)| ElementId::Arc(a, b)).collect()
    }

    fn accepts(&self, u: &Universe, mask: &[bool]) -> bool {
        let n = self.inst.digraph.n as usize;
        let mut next = vec![None; n];
        let mut chosen_count = 0;
        for i in chosen(mask) {
            let ElementId::Arc(a, b) = u.get(i) else {
                return false;
            };
            if next[a as usize].replace(b as usize).is_some() {
                return false;
            }
            chosen_count += 1;
        }
        let mut seen = vec![false; n];
        let mut walked = 0;
        for &(s, t) in &self.inst.pairs {
            let mut v = s as usize;
            if seen[v] {
                return false;
            }
            seen[v] = true;
            while let Some(w) = next[v] {
                if seen[w] {
                    return false;
                }
                seen[w] = true;
                walked += 1;
                v = w;
            }
            if v != t as usize {
                return false;
            }
        }
        walked == chosen_count
    }

    fn enumerate(&self, search: &mut Search<'_>) -> Step {
        let d = &self.inst.digraph;
        let out = d.out_arcs();
        let mut used = vec![false; d.n as usize];
        for &(s, t) in &self.inst.pairs {
            used[s as usize] = true;
            used[t as usize] = true;
        }
        let mut arcs = Vec::new();
        self.route_pair(search, &out, &mut used, &mut arcs, 0)
    }
}

impl DisjointPathsModel<'_> {
    /// Routes pair `pair` and, recursively, all later ones. Terminals stay
    /// reserved in `used` except the sink currently being aimed at.
    fn route_pair(
        &self,
        search: &mut Search<'_>,
        out: &[Vec<(u32, usize)>],
        used: &mut Vec<bool>,
        arcs: &mut Vec<usize>,
        pair: usize,
    ) -> Step {
        let (s, t) = self.inst.pairs[pair];
        used[t as usize] = false;
        let r = self.walk(search, out, used, arcs, pair, s as usize);
        used[t as usize] = true;
        r
    }

    fn walk(
        &self,
        search: &mut Search<'_>,
        out: &[Vec<(u32, usize)>],
        used: &mut Vec<bool>,
        arcs: &mut Vec<usize>,
        pair: usize,
        end: usize,
    ) -> Step {
        search.visit()?;
        let pairs = &self.inst.pairs;
        let (_, target) = pairs[pair];
        if end == target as usize {
            if pair + 1 == pairs.len() {
                let d = &self.inst.digraph;
                search.emit_elements(arcs.iter().map(|&a| ElementId::Arc(d.arcs[a].0, d.arcs[a].1)));
                return Ok(());
            }
            return self.route_pair(search, out, used, arcs, pair + 1);
        }
        if !self.reachable(out, used, end, target as usize) {
            return Ok(());
        }
        for &(s, t) in &pairs[pair + 1..] {
            if !self.reachable(out, used, s as usize, t as usize) {
                return Ok(());
            }
        }
        for &(w, a) in &out[end] {
            let w = w as usize;
            if used[w] {
                continue;
            }
            used[w] = true;
            arcs.push(a);
            let r = self.walk(search, out, used, arcs, pair, w);
            arcs.pop();
            used[w] = false;
            r?;
        }
        Ok(())
    }
}
