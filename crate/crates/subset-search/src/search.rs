//! Budgeted backtracking shared by the per-kind enumerators.

use std::collections::BTreeSet;

use crate::element::{ElementId, Subset, Universe};
use crate::family::SolutionFamily;

/// Signals that the candidate budget ran out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Exhausted;

pub(crate) type Step = Result<(), Exhausted>;

pub(crate) struct Search<'u> {
    universe: &'u Universe,
    limit: u64,
    visited: u64,
    found: BTreeSet<Subset>,
}

impl<'u> Search<'u> {
    pub(crate) fn new(universe: &'u Universe, limit: u64) -> Self {
        Search {
            universe,
            limit,
            visited: 0,
            found: BTreeSet::new(),
        }
    }

    pub(crate) fn universe(&self) -> &'u Universe {
        self.universe
    }

    /// Counts one candidate against the budget.
    pub(crate) fn visit(&mut self) -> Step {
        self.visited += 1;
        if self.visited > self.limit {
            Err(Exhausted)
        } else {
            Ok(())
        }
    }

    pub(crate) fn emit_positions(&mut self, positions: &[usize]) {
        let s = self.universe.subset_of(positions);
        self.found.insert(s);
    }

    pub(crate) fn emit_elements(&mut self, elements: impl IntoIterator<Item = ElementId>) {
        self.found.insert(Subset::new(elements));
    }

    pub(crate) fn finish(self, outcome: Step) -> SolutionFamily {
        match outcome {
            Ok(()) => SolutionFamily::complete(self.found),
            Err(Exhausted) => SolutionFamily::partial(self.found),
        }
    }
}

/// Runs an enumerator closure and packages the result as a family.
pub(crate) fn run(
    universe: &Universe,
    limit: u64,
    body: impl FnOnce(&mut Search<'_>) -> Step,
) -> SolutionFamily {
    let mut search = Search::new(universe, limit);
    let outcome = body(&mut search);
    search.finish(outcome)
}

/// Decision state of one universe position during branching.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Choice {
    Open,
    In,
    Out,
}

/// Enumerates every set of positions of size at most `max_size` that
/// satisfies an upward-closed constraint system.
///
/// `unmet` inspects the current choices and returns the positions of some
/// requirement none of whose members is `In` (the caller guarantees that any
/// valid final set must include one of them), or `None` when every
/// requirement is met. Sets are produced exactly once: each branch fixes the
/// first included member of the returned requirement, and once all
/// requirements are met the open positions are completed freely.
pub(crate) fn upward_closed(
    search: &mut Search<'_>,
    n: usize,
    max_size: usize,
    unmet: &mut dyn FnMut(&[Choice]) -> Option<Vec<usize>>,
) -> Step {
    let mut choices = vec![Choice::Open; n];
    branch_requirements(search, &mut choices, 0, max_size, unmet)
}

fn branch_requirements(
    search: &mut Search<'_>,
    choices: &mut Vec<Choice>,
    chosen: usize,
    max_size: usize,
    unmet: &mut dyn FnMut(&[Choice]) -> Option<Vec<usize>>,
) -> Step {
    search.visit()?;
    let Some(requirement) = unmet(choices) else {
        let included: Vec<usize> = (0..choices.len()).filter(|&i| choices[i] == Choice::In).collect();
        let open: Vec<usize> = (0..choices.len()).filter(|&i| choices[i] == Choice::Open).collect();
        return complete_freely(search, &included, &open, max_size - chosen);
    };
    if chosen == max_size {
        return Ok(());
    }
    let candidates: Vec<usize> = requirement
        .into_iter()
        .filter(|&i| choices[i] == Choice::Open)
        .collect();
    let mut excluded_here = Vec::new();
    for &c in &candidates {
        choices[c] = Choice::In;
        let r = branch_requirements(search, choices, chosen + 1, max_size, unmet);
        choices[c] = Choice::Out;
        excluded_here.push(c);
        if r.is_err() {
            for &e in &excluded_here {
                choices[e] = Choice::Open;
            }
            return r;
        }
    }
    for &e in &excluded_here {
        choices[e] = Choice::Open;
    }
    Ok(())
}

/// [`upward_closed`] for a fixed list of requirements, branching on the one
/// with the fewest open members and pruning when a greedy packing of
/// pairwise disjoint unmet requirements already exceeds the remaining size.
pub(crate) fn hitting_sets(search: &mut Search<'_>, n: usize, max_size: usize, requirements: &[Vec<usize>]) -> Step {
    let mut choices = vec![Choice::Open; n];
    let mut packed = vec![false; n];
    branch_static(search, &mut choices, &mut packed, 0, max_size, requirements)
}

fn branch_static(
    search: &mut Search<'_>,
    choices: &mut Vec<Choice>,
    packed: &mut [bool],
    chosen: usize,
    max_size: usize,
    requirements: &[Vec<usize>],
) -> Step {
    search.visit()?;
    let mut pick: Option<(usize, &Vec<usize>)> = None;
    let mut bound = 0;
    packed.iter_mut().for_each(|p| *p = false);
    for req in requirements {
        if req.iter().any(|&i| choices[i] == Choice::In) {
            continue;
        }
        let open = req.iter().filter(|&&i| choices[i] == Choice::Open).count();
        if open == 0 {
            return Ok(());
        }
        if pick.map_or(true, |(best, _)| open < best) {
            pick = Some((open, req));
        }
        if req.iter().all(|&i| choices[i] != Choice::Open || !packed[i]) {
            bound += 1;
            req.iter().for_each(|&i| packed[i] = true);
        }
    }
    let Some((_, requirement)) = pick else {
        let included: Vec<usize> = (0..choices.len()).filter(|&i| choices[i] == Choice::In).collect();
        let open: Vec<usize> = (0..choices.len()).filter(|&i| choices[i] == Choice::Open).collect();
        return complete_freely(search, &included, &open, max_size - chosen);
    };
    if chosen + bound > max_size {
        return Ok(());
    }
    let candidates: Vec<usize> = requirement.iter().copied().filter(|&i| choices[i] == Choice::Open).collect();
    let mut outcome = Ok(());
    for &c in &candidates {
        choices[c] = Choice::In;
        outcome = branch_static(search, choices, packed, chosen + 1, max_size, requirements);
        choices[c] = Choice::Out;
        if outcome.is_err() {
            break;
        }
    }
    for &c in &candidates {
        choices[c] = Choice::Open;
    }
    outcome
}

/// Emits `base ∪ T` for every `T ⊆ open` with `|T| <= slack`.
pub(crate) fn complete_freely(
    search: &mut Search<'_>,
    base: &[usize],
    open: &[usize],
    slack: usize,
) -> Step {
    let mut current = base.to_vec();
    fn rec(
        search: &mut Search<'_>,
        current: &mut Vec<usize>,
        open: &[usize],
        from: usize,
        slack: usize,
    ) -> Step {
        search.visit()?;
        search.emit_positions(current);
        if slack == 0 {
            return Ok(());
        }
        for i in from..open.len() {
            current.push(open[i]);
            let r = rec(search, current, open, i + 1, slack - 1);
            current.pop();
            r?;
        }
        Ok(())
    }
    rec(search, &mut current, open, 0, slack)
}

/// Plain include/exclude backtracking over positions `0..n` with a prefix
/// pruning hook; `accept` is consulted on complete assignments.
pub(crate) fn include_exclude(
    search: &mut Search<'_>,
    n: usize,
    prune: &mut dyn FnMut(&[bool], usize) -> bool,
    accept: &mut dyn FnMut(&[bool]) -> bool,
) -> Step {
    let mut taken = vec![false; n];
    fn rec(
        search: &mut Search<'_>,
        taken: &mut Vec<bool>,
        depth: usize,
        prune: &mut dyn FnMut(&[bool], usize) -> bool,
        accept: &mut dyn FnMut(&[bool]) -> bool,
    ) -> Step {
        search.visit()?;
        if prune(taken, depth) {
            return Ok(());
        }
        if depth == taken.len() {
            if accept(taken) {
                let positions: Vec<usize> = (0..taken.len()).filter(|&i| taken[i]).collect();
                search.emit_positions(&positions);
            }
            return Ok(());
        }
        taken[depth] = false;
        rec(search, taken, depth + 1, prune, accept)?;
        taken[depth] = true;
        let r = rec(search, taken, depth + 1, prune, accept);
        taken[depth] = false;
        r
    }
    rec(search, &mut taken, 0, prune, accept)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn positions_universe(n: u32) -> Universe {
        Universe::new((0..n).map(ElementId::Vertex).collect()).unwrap()
    }

    #[test]
    fn upward_closed_matches_brute_force_on_small_hitting_systems() {
        let reqs: Vec<Vec<usize>> = vec![vec![0, 1], vec![1, 2], vec![3]];
        let u = positions_universe(5);
        for max in 0..=5 {
            let fam = run(&u, 1 << 20, |s| {
                upward_closed(s, 5, max, &mut |ch| {
                    reqs.iter().find(|r| r.iter().all(|&i| ch[i] != Choice::In)).cloned()
                })
            });
            let mut expected = BTreeSet::new();
            for mask in 0u32..32 {
                let pos: Vec<usize> = (0..5).filter(|i| mask >> i & 1 == 1).collect();
                let ok = pos.len() <= max && reqs.iter().all(|r| r.iter().any(|i| pos.contains(i)));
                if ok {
                    expected.insert(u.subset_of(&pos));
                }
            }
            assert!(fam.is_complete());
            assert_eq!(fam.members(), &expected, "max {max}");
        }
    }

    #[test]
    fn static_requirements_match_the_dynamic_enumerator() {
        let reqs: Vec<Vec<usize>> = vec![vec![0, 1, 4], vec![1, 2], vec![3], vec![2, 5], vec![0, 5], vec![4, 6]];
        let u = positions_universe(7);
        for max in 0..=7 {
            let fast = run(&u, 1 << 20, |s| hitting_sets(s, 7, max, &reqs));
            let slow = run(&u, 1 << 20, |s| {
                upward_closed(s, 7, max, &mut |ch| {
                    reqs.iter().find(|r| r.iter().all(|&i| ch[i] != Choice::In)).cloned()
                })
            });
            assert_eq!(fast, slow, "max {max}");
        }
    }

    #[test]
    fn budget_overrun_is_flagged() {
        let u = positions_universe(10);
        let fam = run(&u, 5, |s| include_exclude(s, 10, &mut |_, _| false, &mut |_| true));
        assert!(!fam.is_complete());
    }
}
