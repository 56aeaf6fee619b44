//! Variant instances over SAT built from quantified formulas.

use crate::catalog::{Cnf, Instance, Payload};
use crate::element::{ElementId, Lit, Subset};
use crate::error::Result;
use crate::game::qbf::{negate_dnf, MatrixForm, QuantifiedFormula};
use crate::variant::{aligned, CombInterdictionInstance, CombTwoStageInstance, RestrictedRegretInstance};

fn lit(l: Lit) -> ElementId {
    ElementId::Literal(l)
}

/// Copy variables `v^t`, `v^f` for a block, then `s`, then `s_1 .. s_n`,
/// numbered after the original variables.
struct CheatLayout {
    block: Vec<u32>,
    first: u32,
}

impl CheatLayout {
    fn new(phi: &QuantifiedFormula, block: usize) -> CheatLayout {
        CheatLayout {
            block: phi.blocks()[block].clone(),
            first: phi.num_vars() + 1,
        }
    }

    fn n(&self) -> u32 {
        self.block.len() as u32
    }

    fn slot(&self, var: u32) -> Option<u32> {
        self.block.iter().position(|&v| v == var).map(|i| i as u32)
    }

    fn on(&self, i: u32) -> u32 {
        self.first + i
    }

    fn off(&self, i: u32) -> u32 {
        self.first + self.n() + i
    }

    fn s(&self) -> u32 {
        self.first + 2 * self.n()
    }

    fn s_i(&self, i: u32) -> u32 {
        self.s() + 1 + i
    }

    fn num_vars(&self) -> u32 {
        self.s() + self.n()
    }

    /// `v ↦ v^t`, `¬v ↦ v^f` for block variables; other literals unchanged.
    fn substitute(&self, l: Lit) -> Lit {
        match self.slot(l.var()) {
            Some(i) if l.is_negated() => Lit::pos(self.off(i)),
            Some(i) => Lit::pos(self.on(i)),
            None => l,
        }
    }

    /// Substituted clauses with `s` appended, then the cheat-detection block.
    fn clauses(&self, matrix: &[Vec<Lit>]) -> Vec<Vec<Lit>> {
        let mut out: Vec<Vec<Lit>> = matrix
            .iter()
            .map(|c| {
                let mut c: Vec<Lit> = c.iter().map(|&l| self.substitute(l)).collect();
                c.push(Lit::pos(self.s()));
                c
            })
            .collect();
        for i in 0..self.n() {
            out.push(vec![Lit::pos(self.on(i)), Lit::neg(self.s_i(i))]);
            out.push(vec![Lit::pos(self.off(i)), Lit::neg(self.s_i(i))]);
        }
        let mut detect = vec![Lit::neg(self.s())];
        detect.extend((0..self.n()).map(|i| Lit::pos(self.s_i(i))));
        out.push(detect);
        out
    }

    /// The positive copy literals `v^t`, `v^f`.
    fn copies(&self) -> Subset {
        Subset::new((0..self.n()).flat_map(|i| [self.on(i), self.off(i)]).map(|v| lit(Lit::pos(v))))
    }
}

fn sat(num_vars: u32, clauses: Vec<Vec<Lit>>) -> Result<Instance> {
    Instance::new(Payload::Sat(Cnf { num_vars, clauses }))
}

/// `∃X ∀Y φ` (DNF) to a blocker game: `B = X^t ∪ X^f`, `t = |X|`.
pub fn gadget_interdiction(phi: &QuantifiedFormula) -> Result<CombInterdictionInstance> {
    phi.expect_shape(2, MatrixForm::Dnf)?;
    let layout = CheatLayout::new(phi, 0);
    let clauses = layout.clauses(&negate_dnf(phi.matrix()));
    let base = sat(layout.num_vars(), clauses)?;
    CombInterdictionInstance::new(base, layout.copies(), layout.n() as i64)
}

/// `∃X ∀Y φ` (DNF) to a restricted regret instance on `¬φ ∨ z`: bounds
/// `[0,1]` on the literals of `X` and `z`, `[0,0]` elsewhere, `q = |X|`.
pub fn gadget_regret(phi: &QuantifiedFormula) -> Result<RestrictedRegretInstance> {
    phi.expect_shape(2, MatrixForm::Dnf)?;
    let z = phi.num_vars() + 1;
    let clauses = negate_dnf(phi.matrix())
        .into_iter()
        .map(|mut c| {
            c.push(Lit::pos(z));
            c
        })
        .collect();
    let base = sat(z, clauses)?;
    let uncertain = phi.blocks()[0]
        .iter()
        .chain([&z])
        .flat_map(|&v| [Lit::pos(v), Lit::neg(v)])
        .map(|l| (lit(l), 1));
    let upper = aligned(base.universe(), uncertain)?;
    let lower = vec![0; upper.len()];
    RestrictedRegretInstance::new(base, lower, upper, phi.blocks()[0].len() as i64)
}

/// `∃X ∀Y ∃Z φ` (CNF) to a two-stage game: `U1` the literals of `X`,
/// `B = Y^t ∪ Y^f`, `Γ = |Y|`.
pub fn gadget_two_stage(phi: &QuantifiedFormula) -> Result<CombTwoStageInstance> {
    phi.expect_shape(3, MatrixForm::Cnf)?;
    let layout = CheatLayout::new(phi, 1);
    let base = sat(layout.num_vars(), layout.clauses(phi.matrix()))?;
    let first_stage = Subset::new(
        phi.blocks()[0]
            .iter()
            .flat_map(|&v| [Lit::pos(v), Lit::neg(v)])
            .map(lit),
    );
    CombTwoStageInstance::new(base, first_stage, layout.copies(), layout.n() as i64)
}
