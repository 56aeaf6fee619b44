//! Exhaustive optimal-play solvers for the variant games and for quantified
//! boolean formulas.

pub(crate) mod interdiction;
pub mod qbf;
pub(crate) mod regret;
pub(crate) mod two_stage;

use std::sync::Arc;

use crate::element::Subset;
use crate::error::{Error, Result};
use crate::variant::Variant;

pub use qbf::{eval_qbf, eval_qbf_recursive, MatrixForm, QuantifiedFormula, Quantifier, EVAL_CAP};
pub use regret::{max_regret_by_extremes, regret_under};

/// Default cap on the nesting product of a solver's enumeration.
pub const SOLVER_BUDGET: u64 = 1 << 22;

/// Outcome of optimal play.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameValue {
    pub decision: bool,
    /// Minimum blocker cost or cardinality, min-max regret, or two-stage
    /// cost; `None` when no strategy achieves a finite value.
    pub value: Option<i64>,
    /// Lexicographically least optimal blocker, solution or first stage.
    pub witness: Option<Subset>,
}

pub(crate) fn within_budget(work: u128, budget: u64) -> Result<()> {
    if work > budget as u128 {
        Err(Error::BudgetExceeded(budget))
    } else {
        Ok(())
    }
}

pub(crate) fn narrow(v: i128) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::ConstructionOverflow("game value".to_string()))
}

pub fn solve_interdiction(v: &Variant, budget: u64) -> Result<GameValue> {
    match v {
        Variant::Interdiction(x) => interdiction::solve_cost(x, budget),
        Variant::CombInterdiction(x) => interdiction::solve_comb(x, budget),
        other => Err(other.mismatch("interdiction")),
    }
}

pub fn solve_min_max_regret(v: &Variant, budget: u64) -> Result<GameValue> {
    match v {
        Variant::Regret(x) => regret::solve_lop(x, budget),
        Variant::RestrictedRegret(x) => regret::solve_restricted(x, budget),
        other => Err(other.mismatch("regret")),
    }
}

pub fn solve_two_stage(v: &Variant, budget: u64) -> Result<GameValue> {
    match v {
        Variant::TwoStage(x) => two_stage::solve_cost(x, budget),
        Variant::CombTwoStage(x) => two_stage::solve_comb(x, budget),
        other => Err(other.mismatch("two-stage")),
    }
}

/// A game solver addressable by id.
pub trait GameSolver: Send + Sync {
    fn id(&self) -> &'static str;
    fn solve(&self, v: &Variant, budget: u64) -> Result<GameValue>;
}

struct FnSolver {
    id: &'static str,
    run: fn(&Variant, u64) -> Result<GameValue>,
}

impl GameSolver for FnSolver {
    fn id(&self) -> &'static str {
        self.id
    }

    fn solve(&self, v: &Variant, budget: u64) -> Result<GameValue> {
        (self.run)(v, budget)
    }
}

#[derive(Clone)]
pub struct Solvers(Vec<Arc<dyn GameSolver>>);

impl Solvers {
    pub fn standard() -> Solvers {
        let entry = |id, run| Arc::new(FnSolver { id, run }) as Arc<dyn GameSolver>;
        Solvers(vec![
            entry("interdiction", solve_interdiction),
            entry("regret", solve_min_max_regret),
            entry("two-stage", solve_two_stage),
        ])
    }

    pub fn register(&mut self, solver: Arc<dyn GameSolver>) {
        self.0.retain(|s| s.id() != solver.id());
        self.0.push(solver);
    }

    pub fn get(&self, id: &str) -> Result<Arc<dyn GameSolver>> {
        self.0
            .iter()
            .find(|s| s.id() == id)
            .cloned()
            .ok_or_else(|| Error::Unknown {
                what: "game",
                name: id.to_string(),
            })
    }

    pub fn ids(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.0.iter().map(|s| s.id())
    }
}

#[cfg(test)]
mod tests;
