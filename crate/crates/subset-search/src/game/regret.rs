use rayon::prelude::*;

use super::{narrow, within_budget, GameValue};
use crate::bits::Bits;
use crate::element::{Subset, Universe};
use crate::error::{Error, Result};
use crate::variant::{feasible_bits, solution_bits, RegretInstance, RestrictedRegretInstance};

/// `reg(S, c) = c(S) - min_{S' ∈ family} c(S')`.
pub fn regret_under(s: &Subset, family: &[Subset], scenario: &[i64], universe: &Universe) -> Result<i128> {
    let cost = |x: &Subset| -> Result<i128> { Ok(Bits::of(universe, x)?.weigh(scenario)) };
    let mut best = None::<i128>;
    for x in family {
        let c = cost(x)?;
        best = Some(best.map_or(c, |b| b.min(c)));
    }
    let best = best.ok_or(Error::UndefinedRegret)?;
    Ok(cost(s)? - best)
}

/// Maximum of `reg(S, c)` over all `2^|U|` extreme scenarios.
pub fn max_regret_by_extremes(
    s: &Subset,
    family: &[Subset],
    lower: &[i64],
    upper: &[i64],
    universe: &Universe,
) -> Result<i128> {
    let n = universe.len();
    assert!(n < 32, "extreme-scenario enumeration is meant for small universes");
    (0..1u64 << n)
        .map(|code| {
            let c: Vec<i64> = (0..n).map(|i| if code >> i & 1 == 1 { upper[i] } else { lower[i] }).collect();
            regret_under(s, family, &c, universe)
        })
        .try_fold(i128::MIN, |m, r| r.map(|r| m.max(r)))
}

/// Max regret of every member of `family`, evaluated at its canonical scenario.
fn regrets(family: &[Bits], lower: &[i64], upper: &[i64]) -> Vec<i128> {
    let gap: Vec<i64> = lower.iter().zip(upper).map(|(l, u)| u - l).collect();
    let base: Vec<i128> = family.iter().map(|x| x.weigh(lower)).collect();
    family
        .par_iter()
        .map(|s| {
            let own = s.weigh(upper);
            let best = family
                .iter()
                .zip(&base)
                .map(|(x, b)| b + x.and(s).weigh(&gap))
                .min()
                .expect("family is nonempty");
            own - best
        })
        .collect()
}

fn solve(family: Vec<Bits>, lower: &[i64], upper: &[i64], threshold: i64, universe: &Universe, budget: u64) -> Result<GameValue> {
    if family.is_empty() {
        return Err(Error::UndefinedRegret);
    }
    within_budget((family.len() as u128).pow(2), budget)?;
    let values = regrets(&family, lower, upper);
    let (at, &min) = values
        .iter()
        .enumerate()
        .min_by_key(|(_, &v)| v)
        .expect("family is nonempty");
    Ok(GameValue {
        decision: min <= threshold as i128,
        value: Some(narrow(min)?),
        witness: Some(family[at].to_subset(universe)),
    })
}

pub(crate) fn solve_lop(v: &RegretInstance, budget: u64) -> Result<GameValue> {
    let family = feasible_bits(v.base(), budget)?;
    solve(family, v.lower(), v.upper(), v.threshold(), v.base().universe(), budget)
}

pub(crate) fn solve_restricted(v: &RestrictedRegretInstance, budget: u64) -> Result<GameValue> {
    let family = solution_bits(v.base(), budget)?;
    solve(family, v.lower(), v.upper(), v.threshold(), v.base().universe(), budget)
}

/// Solutions of the base whose max regret is at most `q`.
pub(crate) fn restricted_solutions(v: &RestrictedRegretInstance, budget: u64) -> Result<Vec<Subset>> {
    let family = solution_bits(v.base(), budget)?;
    if family.is_empty() {
        return Ok(Vec::new());
    }
    within_budget((family.len() as u128).pow(2), budget)?;
    let values = regrets(&family, v.lower(), v.upper());
    let universe = v.base().universe();
    Ok(family
        .iter()
        .zip(values)
        .filter(|(_, r)| *r <= v.threshold() as i128)
        .map(|(s, _)| s.to_subset(universe))
        .collect())
}
