//! Hardness machinery for the variants: gadgets from quantified formulas,
//! reductions carried over to variant instances, and cost-form adaptations.

mod adapt;
mod gadget;

use std::sync::Arc;

use crate::catalog::Instance;
use crate::element::{Subset, Universe};
use crate::error::{Error, Result};
use crate::game::qbf::QuantifiedFormula;
use crate::reduction::verify::{verify_embedding, VerificationReport};
use crate::reduction::{Embedding, Provenance, Reduction};
use crate::variant::{
    wrap_as_ssp, CombInterdictionInstance, CombTwoStageInstance, RestrictedRegretInstance, Variant, VariantKind,
};

pub use adapt::{adapt_interdiction_cost, adapt_regret_cost, adapt_two_stage_cost};
pub use gadget::{gadget_interdiction, gadget_regret, gadget_two_stage};

/// A variant instance over the reduction's target, with `f' = f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedVariant {
    pub target: Variant,
    pub embedding: Embedding,
}

/// A variant family: its gadget, how reductions lift into it, and its
/// cost-form adaptation.
pub trait VariantFamily: Send + Sync {
    fn id(&self) -> &'static str;

    /// The combinatorial kind this family lifts and wraps.
    fn kind(&self) -> VariantKind;

    fn gadget(&self, phi: &QuantifiedFormula) -> Result<Variant>;

    /// Rewrites `v` over `target`, given the base embedding `f`.
    fn carry(&self, v: &Variant, target: Instance, f: &Embedding) -> Result<Variant>;

    fn adapt(&self, v: &Variant) -> Result<Variant>;

    fn expect<'v>(&self, v: &'v Variant) -> Result<&'v Variant> {
        if v.kind() == self.kind() {
            Ok(v)
        } else {
            Err(v.mismatch(self.kind().id()))
        }
    }
}

struct Interdiction;
struct Regret;
struct TwoStage;

fn image(f: &Embedding, s: &Subset) -> Result<Subset> {
    f.image_of(s)
}

impl VariantFamily for Interdiction {
    fn id(&self) -> &'static str {
        "interdiction"
    }

    fn kind(&self) -> VariantKind {
        VariantKind::CombInterdiction
    }

    fn gadget(&self, phi: &QuantifiedFormula) -> Result<Variant> {
        gadget_interdiction(phi).map(Variant::CombInterdiction)
    }

    fn carry(&self, v: &Variant, target: Instance, f: &Embedding) -> Result<Variant> {
        let Variant::CombInterdiction(v) = self.expect(v)? else { unreachable!() };
        let blockable = image(f, v.blockable())?;
        CombInterdictionInstance::new(target, blockable, v.threshold()).map(Variant::CombInterdiction)
    }

    fn adapt(&self, v: &Variant) -> Result<Variant> {
        let Variant::CombInterdiction(v) = self.expect(v)? else { unreachable!() };
        adapt_interdiction_cost(v).map(Variant::Interdiction)
    }
}

impl VariantFamily for Regret {
    fn id(&self) -> &'static str {
        "restricted-regret"
    }

    fn kind(&self) -> VariantKind {
        VariantKind::RestrictedRegret
    }

    fn gadget(&self, phi: &QuantifiedFormula) -> Result<Variant> {
        gadget_regret(phi).map(Variant::RestrictedRegret)
    }

    fn carry(&self, v: &Variant, target: Instance, f: &Embedding) -> Result<Variant> {
        let Variant::RestrictedRegret(v) = self.expect(v)? else { unreachable!() };
        let source = v.base().universe();
        let copy = |h: &[i64]| -> Result<Vec<i64>> { copy_through(f, source, target.universe(), h) };
        let (lower, upper) = (copy(v.lower())?, copy(v.upper())?);
        RestrictedRegretInstance::new(target, lower, upper, v.threshold()).map(Variant::RestrictedRegret)
    }

    fn adapt(&self, v: &Variant) -> Result<Variant> {
        let Variant::RestrictedRegret(v) = self.expect(v)? else { unreachable!() };
        adapt_regret_cost(v).map(Variant::Regret)
    }
}

impl VariantFamily for TwoStage {
    fn id(&self) -> &'static str {
        "two-stage"
    }

    fn kind(&self) -> VariantKind {
        VariantKind::CombTwoStage
    }

    fn gadget(&self, phi: &QuantifiedFormula) -> Result<Variant> {
        gadget_two_stage(phi).map(Variant::CombTwoStage)
    }

    fn carry(&self, v: &Variant, target: Instance, f: &Embedding) -> Result<Variant> {
        let Variant::CombTwoStage(v) = self.expect(v)? else { unreachable!() };
        let first_stage = image(f, v.first_stage())?;
        let blockable = image(f, v.blockable())?;
        CombTwoStageInstance::new(target, first_stage, blockable, v.gamma() as i64).map(Variant::CombTwoStage)
    }

    fn adapt(&self, v: &Variant) -> Result<Variant> {
        let Variant::CombTwoStage(v) = self.expect(v)? else { unreachable!() };
        adapt_two_stage_cost(v).map(Variant::TwoStage)
    }
}

/// Values moved along `f`, zero on target elements outside the image.
fn copy_through(f: &Embedding, source: &Universe, target: &Universe, values: &[i64]) -> Result<Vec<i64>> {
    let mut out = vec![0; target.len()];
    for (i, e) in source.iter().enumerate() {
        let image = f.get(e).ok_or(Error::ForeignElement(*e))?;
        let j = target.index_of(&image).ok_or(Error::ForeignElement(image))?;
        out[j] = values[i];
    }
    Ok(out)
}

/// Variant families by id.
#[derive(Clone)]
pub struct Families(Vec<Arc<dyn VariantFamily>>);

impl Families {
    pub fn standard() -> Families {
        Families(vec![Arc::new(Interdiction), Arc::new(Regret), Arc::new(TwoStage)])
    }

    pub fn register(&mut self, family: Arc<dyn VariantFamily>) {
        self.0.retain(|f| f.id() != family.id());
        self.0.push(family);
    }

    /// Looks up a family by id, by the id of its combinatorial kind, or by
    /// its game name.
    pub fn get(&self, id: &str) -> Result<Arc<dyn VariantFamily>> {
        self.0
            .iter()
            .find(|f| f.id() == id || f.kind().id() == id || f.kind().game() == id)
            .cloned()
            .ok_or_else(|| Error::Unknown {
                what: "variant family",
                name: id.to_string(),
            })
    }

    pub fn iter(&self) -> impl Iterator<Item = Arc<dyn VariantFamily>> + '_ {
        self.0.iter().cloned()
    }
}

/// A catalog reduction carried over to one variant family.
#[derive(Clone)]
pub struct LiftedReduction {
    reduction: Arc<dyn Reduction>,
    family: Arc<dyn VariantFamily>,
}

pub fn lift(reduction: Arc<dyn Reduction>, family: Arc<dyn VariantFamily>) -> LiftedReduction {
    LiftedReduction { reduction, family }
}

impl LiftedReduction {
    pub fn id(&self) -> String {
        format!("{}@{}", self.reduction.id(), self.family.id())
    }

    pub fn provenance(&self) -> Provenance {
        Provenance::Lifted
    }

    pub fn reduction(&self) -> &Arc<dyn Reduction> {
        &self.reduction
    }

    pub fn family(&self) -> &Arc<dyn VariantFamily> {
        &self.family
    }

    /// Applies the base reduction and rewrites the variant data. A restricted
    /// regret source must have a solution.
    pub fn apply(&self, v: &Variant) -> Result<LiftedVariant> {
        self.family.expect(v)?;
        if v.kind() == VariantKind::RestrictedRegret {
            let budget = crate::DEFAULT_BUDGET;
            if v.base().enumerate_solutions(budget).require_complete(budget)?.is_empty() {
                return Err(Error::UndefinedRegret);
            }
        }
        let reduced = self.reduction.apply(v.base())?;
        let target = self.family.carry(v, reduced.target, &reduced.embedding)?;
        Ok(LiftedVariant {
            target,
            embedding: reduced.embedding,
        })
    }
}

/// Lifts `v` and checks solution preservation between the wrapped source
/// and target variants.
pub fn verify_lifted(r: &LiftedReduction, v: &Variant, budget: u64) -> Result<(LiftedVariant, VerificationReport)> {
    let out = r.apply(v)?;
    let source = wrap_as_ssp(v)?;
    let target = wrap_as_ssp(&out.target)?;
    let report = verify_embedding(&source, &target, &out.embedding, budget)?;
    Ok((out, report))
}

#[cfg(test)]
mod tests;
