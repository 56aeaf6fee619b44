use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use super::{narrow, within_budget, GameValue};
use crate::bits::{gather, scatter, Bits};
use crate::element::Subset;
use crate::error::{Error, Result};
use crate::variant::{feasible_bits, positions, solution_bits, CombTwoStageInstance, TwoStageInstance};

/// Codes over `width` bits with at most `limit` ones.
fn small_codes(width: usize, limit: usize) -> Vec<u64> {
    (0..1u64 << width)
        .filter(|c| c.count_ones() as usize <= limit)
        .collect()
}

/// Candidate first stages (the `U1`-parts of base solutions), each with the
/// blockable parts of its completions.
fn first_stage_table(v: &CombTwoStageInstance, budget: u64) -> Result<(BTreeMap<Subset, Vec<u64>>, Vec<u64>)> {
    let base = v.base();
    let universe = base.universe();
    let blockable = positions(universe, v.blockable())?;
    if blockable.len() > 40 {
        return Err(Error::BudgetExceeded(budget));
    }
    within_budget(1u128 << blockable.len(), budget)?;
    let u1 = Bits::of(universe, v.first_stage())?;
    let mut table: BTreeMap<Subset, BTreeSet<u64>> = BTreeMap::new();
    for s in solution_bits(base, budget)? {
        let key = s.and(&u1).to_subset(universe);
        table.entry(key).or_default().insert(gather(&s, &blockable));
    }
    let blockers = small_codes(blockable.len(), v.gamma());
    let rows: usize = table.values().map(BTreeSet::len).sum();
    within_budget(rows as u128 * blockers.len() as u128, budget)?;
    let table = table
        .into_iter()
        .map(|(k, rows)| (k, rows.into_iter().collect()))
        .collect();
    Ok((table, blockers))
}

fn survives(completions: &[u64], blockers: &[u64]) -> bool {
    blockers
        .iter()
        .all(|b| completions.iter().any(|r| r & b == 0))
}

/// Every `S1 ⊆ U1` that can be completed against any admissible blocker.
pub(crate) fn surviving_first_stages(v: &CombTwoStageInstance, budget: u64) -> Result<Vec<Subset>> {
    let (table, blockers) = first_stage_table(v, budget)?;
    let entries: Vec<_> = table.into_iter().collect();
    Ok(entries
        .into_par_iter()
        .filter(|(_, rows)| survives(rows, &blockers))
        .map(|(s1, _)| s1)
        .collect())
}

pub(crate) fn solve_comb(v: &CombTwoStageInstance, budget: u64) -> Result<GameValue> {
    let witness = surviving_first_stages(v, budget)?.into_iter().next();
    Ok(GameValue {
        decision: witness.is_some(),
        value: None,
        witness,
    })
}

pub(crate) fn solve_cost(v: &TwoStageInstance, budget: u64) -> Result<GameValue> {
    let base = v.base();
    let universe = base.universe();
    let n = universe.len();
    if n > 40 {
        return Err(Error::BudgetExceeded(budget));
    }
    let feasible = feasible_bits(base, budget)?;
    let uncertain: Vec<usize> = (0..n).filter(|&i| v.lower()[i] != v.upper()[i]).collect();
    within_budget(1u128 << uncertain.len(), budget)?;
    let scenarios: Vec<Bits> = small_codes(uncertain.len(), v.gamma())
        .into_iter()
        .map(|c| scatter(n, &uncertain, c))
        .collect();
    within_budget((1u128 << n) * scenarios.len() as u128 * feasible.len().max(1) as u128, budget)?;
    let gap: Vec<i64> = v.lower().iter().zip(v.upper()).map(|(l, u)| u - l).collect();
    let all: Vec<usize> = (0..n).collect();

    let value_of = |code: u64| -> Option<i128> {
        let s1 = scatter(n, &all, code);
        let completions: Vec<Bits> = feasible
            .iter()
            .filter(|f| s1.is_subset_of(f))
            .map(|f| f.and_not(&s1))
            .collect();
        if completions.is_empty() {
            return None;
        }
        let floor: Vec<i128> = completions.iter().map(|c| c.weigh(v.lower())).collect();
        let worst = scenarios
            .iter()
            .map(|raised| {
                completions
                    .iter()
                    .zip(&floor)
                    .map(|(c, f)| f + c.and(raised).weigh(&gap))
                    .min()
                    .expect("nonempty")
            })
            .max()
            .expect("the empty scenario is always present");
        Some(s1.weigh(v.first()) + worst)
    };

    let values: Vec<Option<i128>> = (0..1u64 << n).into_par_iter().map(value_of).collect();
    let Some(best) = values.iter().flatten().min().copied() else {
        return Ok(GameValue {
            decision: false,
            value: None,
            witness: None,
        });
    };
    let witness = values
        .iter()
        .enumerate()
        .filter(|(_, x)| **x == Some(best))
        .map(|(code, _)| scatter(n, &all, code as u64).to_subset(universe))
        .min();
    Ok(GameValue {
        decision: best <= v.threshold() as i128,
        value: Some(narrow(best)?),
        witness,
    })
}
