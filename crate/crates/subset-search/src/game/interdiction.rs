use std::collections::BTreeSet;

use rayon::prelude::*;

use super::{narrow, within_budget, GameValue};
use crate::bits::{gather, scatter};
use crate::element::{Subset, Universe};
use crate::error::{Error, Result};
use crate::variant::{positions, solution_bits, CombInterdictionInstance, InterdictionInstance};

/// Base solutions projected onto the blockable positions, deduplicated.
struct Board {
    blockable: Vec<usize>,
    rows: Vec<u64>,
}

impl Board {
    fn build(base: &crate::Instance, blockable: Vec<usize>, budget: u64) -> Result<Board> {
        if blockable.len() > 40 {
            return Err(Error::BudgetExceeded(budget));
        }
        let rows: BTreeSet<u64> = solution_bits(base, budget)?
            .iter()
            .map(|s| gather(s, &blockable))
            .collect();
        let rows: Vec<u64> = rows.into_iter().collect();
        within_budget((1u128 << blockable.len()) * rows.len().max(1) as u128, budget)?;
        Ok(Board { blockable, rows })
    }

    fn hits_all(&self, code: u64) -> bool {
        self.rows.iter().all(|r| r & code != 0)
    }

    fn codes(&self) -> impl ParallelIterator<Item = u64> + '_ {
        (0..1u64 << self.blockable.len())
            .into_par_iter()
            .filter(|&c| self.hits_all(c))
    }

    fn subset(&self, universe: &Universe, code: u64) -> Subset {
        scatter(universe.len(), &self.blockable, code).to_subset(universe)
    }

    /// Least-valued hitting codes and their lexicographically least subset.
    fn best(&self, universe: &Universe, value: impl Fn(u64) -> i128 + Sync) -> Option<(i128, Subset)> {
        let min = self.codes().map(&value).min()?;
        let witness = self
            .codes()
            .filter(|&c| value(c) == min)
            .map(|c| self.subset(universe, c))
            .min()?;
        Some((min, witness))
    }
}

/// Every `B' ⊆ B` with `|B'| ≤ t` that hits all base solutions.
pub(crate) fn admissible_blockers(v: &CombInterdictionInstance, budget: u64) -> Result<Vec<Subset>> {
    let universe = v.base().universe();
    let board = Board::build(v.base(), positions(universe, v.blockable())?, budget)?;
    let t = v.threshold();
    let mut out: Vec<Subset> = board
        .codes()
        .filter(|c| (c.count_ones() as i64) <= t)
        .map(|c| board.subset(universe, c))
        .collect();
    out.sort();
    Ok(out)
}

pub(crate) fn solve_comb(v: &CombInterdictionInstance, budget: u64) -> Result<GameValue> {
    let universe = v.base().universe();
    let board = Board::build(v.base(), positions(universe, v.blockable())?, budget)?;
    Ok(match board.best(universe, |c| c.count_ones() as i128) {
        Some((size, witness)) => GameValue {
            decision: size <= v.threshold() as i128,
            value: Some(narrow(size)?),
            witness: Some(witness),
        },
        None => GameValue {
            decision: false,
            value: None,
            witness: None,
        },
    })
}

pub(crate) fn solve_cost(v: &InterdictionInstance, budget: u64) -> Result<GameValue> {
    let universe = v.base().universe();
    let all: Vec<usize> = (0..universe.len()).collect();
    let board = Board::build(v.base(), all, budget)?;
    let cost = v.cost();
    let price = |c: u64| -> i128 { (0..universe.len()).filter(|j| c >> j & 1 == 1).map(|j| cost[j] as i128).sum() };
    Ok(match board.best(universe, price) {
        Some((c, witness)) => GameValue {
            decision: c <= v.threshold() as i128,
            value: Some(narrow(c)?),
            witness: Some(witness),
        },
        None => GameValue {
            decision: false,
            value: None,
            witness: None,
        },
    })
}
