use super::{chosen, LopModel, Model, SetSystem};
use crate::element::{ElementId, Universe};
use crate::search::{hitting_sets, Search, Step};

fn validate_system(s: &SetSystem, out: &mut Vec<String>) {
    for (i, set) in s.sets.iter().enumerate() {
        let mut sorted = set.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            out.push(format!("set {i} repeats an element"));
        }
        if let Some(x) = set.iter().find(|&&x| x >= s.ground) {
            out.push(format!("set {i} contains {x} outside the ground set 0..{}", s.ground));
        }
    }
    if s.k < 0 {
        out.push(format!("bound k must be nonnegative, found {}", s.k));
    }
}

fn cap(k: i64, n: usize) -> usize {
    k.clamp(0, n as i64) as usize
}

/// Set cover: universe = the sets; pick at most `k` sets covering the ground set.
pub(super) struct SetCoverModel<'a>(pub &'a SetSystem);

impl SetCoverModel<'_> {
    /// For each ground element, the sets that contain it.
    fn owners(&self) -> Vec<Vec<usize>> {
        let mut owners = vec![Vec::new(); self.0.ground as usize];
        for (i, set) in self.0.sets.iter().enumerate() {
            for &x in set {
                owners[x as usize].push(i);
            }
        }
        owners
    }

    fn covers(&self, mask: &[bool]) -> bool {
        let mut hit = vec![false; self.0.ground as usize];
        for i in chosen(mask) {
            for &x in &self.0.sets[i] {
                hit[x as usize] = true;
            }
        }
        hit.into_iter().all(|h| h)
    }

    fn run(&self, search: &mut Search<'_>, max: usize) -> Step {
        let owners = self.owners();
        hitting_sets(search, self.0.sets.len(), max, &owners)
    }
}

impl Model for SetCoverModel<'_> {
    fn validate(&self, out: &mut Vec<String>) {
        validate_system(self.0, out);
    }

    fn elements(&self) -> Vec<ElementId> {
        (0..self.0.sets.len() as u32).map(ElementId::Set).collect()
    }

    fn accepts(&self, _u: &Universe, mask: &[bool]) -> bool {
        self.covers(mask) && chosen(mask).count() as i64 <= self.0.k
    }

    fn enumerate(&self, search: &mut Search<'_>) -> Step {
        self.run(search, cap(self.0.k, self.0.sets.len()))
    }

    fn lop(&self) -> Option<&dyn LopModel> {
        Some(self)
    }
}

impl LopModel for SetCoverModel<'_> {
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
        self.run(search, self.0.sets.len())
    }
}

/// Hitting set: universe = the ground elements; pick at most `k` of them
/// meeting every set.
pub(super) struct HittingSetModel<'a>(pub &'a SetSystem);

impl HittingSetModel<'_> {
    fn hits(&self, mask: &[bool]) -> bool {
        self.0.sets.iter().all(|s| s.iter().any(|&x| mask[x as usize]))
    }

    fn run(&self, search: &mut Search<'_>, max: usize) -> Step {
        let sets: Vec<Vec<usize>> = self
            .0
            .sets
            .iter()
            .map(|s| s.iter().map(|&x| x as usize).collect())
            .collect();
        hitting_sets(search, self.0.ground as usize, max, &sets)
    }
}

impl Model for HittingSetModel<'_> {
    fn validate(&self, out: &mut Vec<String>) {
        validate_system(self.0, out);
    }

    fn elements(&self) -> Vec<ElementId> {
        (0..self.0.ground).map(ElementId::Number).collect()
    }

    fn accepts(&self, _u: &Universe, mask: &[bool]) -> bool {
        self.hits(mask) && chosen(mask).count() as i64 <= self.0.k
    }

    fn enumerate(&self, search: &mut Search<'_>) -> Step {
        self.run(search, cap(self.0.k, self.0.ground as usize))
    }

    fn lop(&self) -> Option<&dyn LopModel> {
        Some(self)
    }
}

impl LopModel for HittingSetModel<'_> {
    fn feasible(&self, _u: &Universe, mask: &[bool]) -> bool {
        self.hits(mask)
    }

    fn cost(&self, _e: ElementId) -> i64 {
        1
    }

    fn threshold(&self) -> i64 {
        self.0.k
    }

    fn enumerate_feasible(&self, search: &mut Search<'_>) -> Step {
        self.run(search, self.0.ground as usize)
    }
}
