//! Exhaustive check of solution preservation on one instance.

use std::collections::BTreeSet;

use super::{Embedding, Reduced, Reduction};
use crate::catalog::Instance;
use crate::element::Subset;
use crate::error::Result;
use crate::ssp::Ssp;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Mismatch,
    /// One of the enumerations hit its budget; nothing was decided.
    Inconclusive,
}

/// Which side of the preservation equation a witness is missing from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Side {
    /// In `{f(S)}` but not in `{S' ∩ f(U)}`.
    ImageOnly,
    /// In `{S' ∩ f(U)}` but not in `{f(S)}`.
    RestrictionOnly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    /// `{ f(S) : S ∈ S(x) }`.
    pub images: BTreeSet<Subset>,
    /// `{ S' ∩ f(U) : S' ∈ S(g(x)) }`.
    pub restrictions: BTreeSet<Subset>,
    pub source_solutions: usize,
    pub target_solutions: usize,
    pub equal: bool,
    /// Both instances are Yes-instances, or both are No-instances.
    pub yes_agree: bool,
    /// Smallest subset in the symmetric difference.
    pub witness: Option<(Subset, Side)>,
    pub verdict: Verdict,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// Checks `{f(S)} = {S' ∩ f(U)}` and Yes-status agreement.
pub fn verify_embedding(
    source: &dyn Ssp,
    target: &dyn Ssp,
    embedding: &Embedding,
    budget: u64,
) -> Result<VerificationReport> {
    embedding.check(source.universe(), target.universe())?;
    let left = source.enumerate_solutions(budget)?;
    let right = target.enumerate_solutions(budget)?;
    let complete = left.is_complete() && right.is_complete();
    let image = embedding.image();
    let images = left
        .iter()
        .map(|s| embedding.image_of(s))
        .collect::<Result<BTreeSet<_>>>()?;
    let restrictions: BTreeSet<Subset> = right.iter().map(|s| s.intersection(&image)).collect();
    let equal = images == restrictions;
    let yes_agree = left.is_empty() == right.is_empty();
    let witness = images
        .difference(&restrictions)
        .next()
        .map(|s| (s.clone(), Side::ImageOnly))
        .into_iter()
        .chain(restrictions.difference(&images).next().map(|s| (s.clone(), Side::RestrictionOnly)))
        .min();
    let verdict = if !complete {
        Verdict::Inconclusive
    } else if equal && yes_agree {
        Verdict::Pass
    } else {
        Verdict::Mismatch
    };
    Ok(VerificationReport {
        source_solutions: left.len(),
        target_solutions: right.len(),
        images,
        restrictions,
        equal: complete && equal,
        yes_agree: complete && yes_agree,
        witness,
        verdict,
    })
}

/// Applies `reduction` to `x` and verifies the result.
pub fn verify_ssp(reduction: &dyn Reduction, x: &Instance, budget: u64) -> Result<(Reduced, VerificationReport)> {
    let reduced = reduction.apply(x)?;
    let report = verify_embedding(x, &reduced.target, &reduced.embedding, budget)?;
    Ok((reduced, report))
}
