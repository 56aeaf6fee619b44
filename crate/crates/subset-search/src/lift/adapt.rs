//! Combinatorial forms rewritten as cost forms on the same base.

use crate::element::Subset;
use crate::error::{Error, Result};
use crate::variant::{
    positions, CombInterdictionInstance, CombTwoStageInstance, InterdictionInstance, RegretInstance,
    RestrictedRegretInstance, TwoStageInstance,
};

fn overflow() -> Error {
    Error::ConstructionOverflow("adapted costs".to_string())
}

/// Cost `1` on `B` and `t + 1` elsewhere, same threshold. Requires `t ≥ 0`
/// so that no element outside `B` is affordable.
pub fn adapt_interdiction_cost(v: &CombInterdictionInstance) -> Result<InterdictionInstance> {
    let t = v.threshold();
    if t < 0 {
        return Err(Error::Precondition(format!("threshold must be nonnegative, found {t}")));
    }
    let universe = v.base().universe();
    let outside = t.checked_add(1).ok_or_else(overflow)?;
    let mut cost = vec![outside; universe.len()];
    for i in positions(universe, v.blockable())? {
        cost[i] = 1;
    }
    InterdictionInstance::new(v.base().clone(), cost, t)
}

/// `c_e = 2(n+1) d(e) + h_e` for both bounds, with `n = |U|` and `t = q`.
///
/// The regret values coincide only when every solution is a cheapest
/// feasible set, so a threshold above the optimum is rejected.
pub fn adapt_regret_cost(v: &RestrictedRegretInstance) -> Result<RegretInstance> {
    let base = v.base();
    let extras = base.lop_extras()?;
    let budget = crate::DEFAULT_BUDGET;
    let price = |s: &Subset| -> Result<i128> { Ok(extras.cost_of_mask(&base.universe().mask(s)?)) };
    let solutions = base.enumerate_solutions(budget);
    let solutions = solutions.require_complete(budget)?;
    if solutions.is_empty() {
        return Err(Error::UndefinedRegret);
    }
    let feasible = base.enumerate_feasible(budget)?;
    let mut cheapest = i128::MAX;
    for f in feasible.require_complete(budget)? {
        cheapest = cheapest.min(price(f)?);
    }
    for s in solutions {
        if price(s)? != cheapest {
            return Err(Error::Precondition(format!(
                "solution {s} is not a cheapest feasible set; the threshold must be tight"
            )));
        }
    }
    let scale = 2 * (extras.costs.len() as i64 + 1);
    let lift = |h: &[i64]| -> Result<Vec<i64>> {
        extras
            .costs
            .iter()
            .zip(h)
            .map(|(&d, &h)| d.checked_mul(scale).and_then(|c| c.checked_add(h)).ok_or_else(overflow))
            .collect()
    };
    RegretInstance::new(v.base().clone(), lift(v.lower())?, lift(v.upper())?, v.threshold())
}

/// `c1 = d` on `U1`, `t+1` elsewhere; `c2` is `t+1` on `U1`, `d` elsewhere,
/// raised to `t+1` on `B`; `t_TS = t`, `Γ' = Γ`. Requires `d ≥ 0` and
/// `t ≥ 0` so the sentinel `t+1` is never affordable.
pub fn adapt_two_stage_cost(v: &CombTwoStageInstance) -> Result<TwoStageInstance> {
    let extras = v.base().lop_extras()?;
    let t = extras.threshold;
    if t < 0 || extras.costs.iter().any(|&d| d < 0) {
        return Err(Error::Precondition(
            "two-stage adaptation needs nonnegative costs and threshold".to_string(),
        ));
    }
    let universe = v.base().universe();
    let sentinel = t.checked_add(1).ok_or_else(overflow)?;
    let mut first = vec![sentinel; universe.len()];
    let mut lower = extras.costs.clone();
    for i in positions(universe, v.first_stage())? {
        first[i] = extras.costs[i];
        lower[i] = sentinel;
    }
    let mut upper = lower.clone();
    for i in positions(universe, v.blockable())? {
        upper[i] = sentinel;
    }
    TwoStageInstance::new(v.base().clone(), first, lower, upper, t, v.gamma() as i64)
}
