//! Robust variants over a base instance: interdiction, min-max regret and
//! two-stage adjustable problems, each in a cost form and a combinatorial
//! form.

use std::fmt;
use std::str::FromStr;

use crate::bits::Bits;
use crate::catalog::Instance;
use crate::element::{ElementId, Subset, Universe};
use crate::error::{Diagnostics, Error, Result};
use crate::family::SolutionFamily;
use crate::game;
use crate::ssp::Ssp;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VariantKind {
    Interdiction,
    CombInterdiction,
    Regret,
    RestrictedRegret,
    TwoStage,
    CombTwoStage,
}

impl VariantKind {
    pub const ALL: [VariantKind; 6] = [
        VariantKind::Interdiction,
        VariantKind::CombInterdiction,
        VariantKind::Regret,
        VariantKind::RestrictedRegret,
        VariantKind::TwoStage,
        VariantKind::CombTwoStage,
    ];

    pub fn id(self) -> &'static str {
        match self {
            VariantKind::Interdiction => "interdiction",
            VariantKind::CombInterdiction => "comb-interdiction",
            VariantKind::Regret => "regret",
            VariantKind::RestrictedRegret => "restricted-regret",
            VariantKind::TwoStage => "two-stage",
            VariantKind::CombTwoStage => "comb-two-stage",
        }
    }

    /// The game played on this kind: `interdiction`, `regret` or `two-stage`.
    pub fn game(self) -> &'static str {
        match self {
            VariantKind::Interdiction | VariantKind::CombInterdiction => "interdiction",
            VariantKind::Regret | VariantKind::RestrictedRegret => "regret",
            VariantKind::TwoStage | VariantKind::CombTwoStage => "two-stage",
        }
    }

    /// Combinatorial kinds are the ones that are themselves subset problems.
    pub fn is_combinatorial(self) -> bool {
        matches!(
            self,
            VariantKind::CombInterdiction | VariantKind::RestrictedRegret | VariantKind::CombTwoStage
        )
    }
}

impl fmt::Display for VariantKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for VariantKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        VariantKind::ALL
            .into_iter()
            .find(|k| k.id() == s)
            .ok_or_else(|| Error::Unknown {
                what: "variant",
                name: s.to_string(),
            })
    }
}

fn check_len(what: &str, values: &[i64], universe: &Universe, out: &mut Vec<String>) {
    if values.len() != universe.len() {
        out.push(format!("{what} has {} entries for {} elements", values.len(), universe.len()));
    }
}

fn check_within(what: &str, s: &Subset, universe: &Universe, out: &mut Vec<String>) {
    if let Some(e) = s.iter().find(|e| !universe.contains(e)) {
        out.push(format!("{what} element {e} is not in the universe"));
    }
}

fn check_intervals(lower: &[i64], upper: &[i64], universe: &Universe, out: &mut Vec<String>) {
    check_len("lower bound", lower, universe, out);
    check_len("upper bound", upper, universe, out);
    if let Some(i) = (0..lower.len().min(upper.len())).find(|&i| lower[i] > upper[i]) {
        out.push(format!("interval of {} is empty: [{}, {}]", universe.get(i), lower[i], upper[i]));
    }
}

fn finish<T>(value: T, out: Vec<String>) -> Result<T> {
    if out.is_empty() {
        Ok(value)
    } else {
        Err(Error::Invalid(Diagnostics(out)))
    }
}

fn require_lop(base: &Instance) -> Result<()> {
    base.lop_extras().map(|_| ())
}

/// Blocker game with element costs: some `B ⊆ U` with `c(B) ≤ t` hits every solution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterdictionInstance {
    base: Instance,
    cost: Vec<i64>,
    threshold: i64,
}

impl InterdictionInstance {
    pub fn new(base: Instance, cost: Vec<i64>, threshold: i64) -> Result<Self> {
        let mut out = Vec::new();
        check_len("cost", &cost, base.universe(), &mut out);
        finish(InterdictionInstance { base, cost, threshold }, out)
    }

    pub fn base(&self) -> &Instance {
        &self.base
    }

    pub fn cost(&self) -> &[i64] {
        &self.cost
    }

    pub fn threshold(&self) -> i64 {
        self.threshold
    }
}

/// Blocker game over a blockable set: some `B' ⊆ B`, `|B'| ≤ t`, hits every solution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CombInterdictionInstance {
    base: Instance,
    blockable: Subset,
    threshold: i64,
}

impl CombInterdictionInstance {
    pub fn new(base: Instance, blockable: Subset, threshold: i64) -> Result<Self> {
        let mut out = Vec::new();
        check_within("blockable", &blockable, base.universe(), &mut out);
        finish(CombInterdictionInstance { base, blockable, threshold }, out)
    }

    pub fn base(&self) -> &Instance {
        &self.base
    }

    pub fn blockable(&self) -> &Subset {
        &self.blockable
    }

    pub fn threshold(&self) -> i64 {
        self.threshold
    }
}

/// Min-max regret over the feasible sets of an LOP base with interval costs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegretInstance {
    base: Instance,
    lower: Vec<i64>,
    upper: Vec<i64>,
    threshold: i64,
}

impl RegretInstance {
    pub fn new(base: Instance, lower: Vec<i64>, upper: Vec<i64>, threshold: i64) -> Result<Self> {
        require_lop(&base)?;
        let mut out = Vec::new();
        check_intervals(&lower, &upper, base.universe(), &mut out);
        finish(RegretInstance { base, lower, upper, threshold }, out)
    }

    pub fn base(&self) -> &Instance {
        &self.base
    }

    pub fn lower(&self) -> &[i64] {
        &self.lower
    }

    pub fn upper(&self) -> &[i64] {
        &self.upper
    }

    pub fn threshold(&self) -> i64 {
        self.threshold
    }
}

/// Min-max regret over the solutions of any base, with 0/1 interval bounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictedRegretInstance {
    base: Instance,
    lower: Vec<i64>,
    upper: Vec<i64>,
    threshold: i64,
}

impl RestrictedRegretInstance {
    pub fn new(base: Instance, lower: Vec<i64>, upper: Vec<i64>, threshold: i64) -> Result<Self> {
        let mut out = Vec::new();
        check_intervals(&lower, &upper, base.universe(), &mut out);
        if lower.iter().chain(&upper).any(|&h| h != 0 && h != 1) {
            out.push("restricted bounds must be 0 or 1".to_string());
        }
        finish(RestrictedRegretInstance { base, lower, upper, threshold }, out)
    }

    pub fn base(&self) -> &Instance {
        &self.base
    }

    pub fn lower(&self) -> &[i64] {
        &self.lower
    }

    pub fn upper(&self) -> &[i64] {
        &self.upper
    }

    pub fn threshold(&self) -> i64 {
        self.threshold
    }
}

/// Two-stage game on an LOP base: first-stage costs, second-stage interval
/// costs of which at most `gamma` coordinates are raised.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoStageInstance {
    base: Instance,
    first: Vec<i64>,
    lower: Vec<i64>,
    upper: Vec<i64>,
    threshold: i64,
    gamma: usize,
    clamped_from: Option<i64>,
}

impl TwoStageInstance {
    /// Rejects `gamma < 0`; a `gamma` above `|U|` is clamped to `|U|`.
    pub fn new(
        base: Instance,
        first: Vec<i64>,
        lower: Vec<i64>,
        upper: Vec<i64>,
        threshold: i64,
        gamma: i64,
    ) -> Result<Self> {
        require_lop(&base)?;
        let universe = base.universe();
        let mut out = Vec::new();
        check_len("first-stage cost", &first, universe, &mut out);
        check_len("second-stage lower cost", &lower, universe, &mut out);
        check_len("second-stage upper cost", &upper, universe, &mut out);
        if gamma < 0 {
            out.push(format!("gamma must be nonnegative, found {gamma}"));
        }
        let n = universe.len();
        let (g, clamped_from) = match usize::try_from(gamma) {
            Ok(g) if g > n => (n, Some(gamma)),
            Ok(g) => (g, None),
            Err(_) => (0, None),
        };
        finish(
            TwoStageInstance {
                base,
                first,
                lower,
                upper,
                threshold,
                gamma: g,
                clamped_from,
            },
            out,
        )
    }

    pub fn base(&self) -> &Instance {
        &self.base
    }

    pub fn first(&self) -> &[i64] {
        &self.first
    }

    pub fn lower(&self) -> &[i64] {
        &self.lower
    }

    pub fn upper(&self) -> &[i64] {
        &self.upper
    }

    pub fn threshold(&self) -> i64 {
        self.threshold
    }

    pub fn gamma(&self) -> usize {
        self.gamma
    }

    /// `gamma` as given, before clamping.
    pub fn requested_gamma(&self) -> i64 {
        self.clamped_from.unwrap_or(self.gamma as i64)
    }

    /// Diagnostic for a clamped `gamma`, if any.
    pub fn clamp_note(&self) -> Option<String> {
        self.clamped_from
            .map(|g| format!("gamma {g} exceeds |U| = {}; clamped", self.gamma))
    }
}

/// Two-stage game on any base: a first stage inside `U1`, then at most
/// `gamma` elements of `B ⊆ U \ U1` are blocked, then completion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CombTwoStageInstance {
    base: Instance,
    first_stage: Subset,
    blockable: Subset,
    gamma: usize,
}

impl CombTwoStageInstance {
    pub fn new(base: Instance, first_stage: Subset, blockable: Subset, gamma: i64) -> Result<Self> {
        let universe = base.universe();
        let mut out = Vec::new();
        check_within("first-stage", &first_stage, universe, &mut out);
        check_within("blockable", &blockable, universe, &mut out);
        if first_stage.intersects(&blockable) {
            out.push("blockable elements must lie outside the first-stage set".to_string());
        }
        if gamma < 0 {
            out.push(format!("gamma must be nonnegative, found {gamma}"));
        }
        let gamma = usize::try_from(gamma).unwrap_or(0);
        finish(
            CombTwoStageInstance {
                base,
                first_stage,
                blockable,
                gamma,
            },
            out,
        )
    }

    pub fn base(&self) -> &Instance {
        &self.base
    }

    /// `U1`.
    pub fn first_stage(&self) -> &Subset {
        &self.first_stage
    }

    /// `U2 = U \ U1`.
    pub fn second_stage(&self) -> Subset {
        self.base.universe().whole().difference(&self.first_stage)
    }

    pub fn blockable(&self) -> &Subset {
        &self.blockable
    }

    pub fn gamma(&self) -> usize {
        self.gamma
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Variant {
    Interdiction(InterdictionInstance),
    CombInterdiction(CombInterdictionInstance),
    Regret(RegretInstance),
    RestrictedRegret(RestrictedRegretInstance),
    TwoStage(TwoStageInstance),
    CombTwoStage(CombTwoStageInstance),
}

impl Variant {
    pub fn kind(&self) -> VariantKind {
        match self {
            Variant::Interdiction(_) => VariantKind::Interdiction,
            Variant::CombInterdiction(_) => VariantKind::CombInterdiction,
            Variant::Regret(_) => VariantKind::Regret,
            Variant::RestrictedRegret(_) => VariantKind::RestrictedRegret,
            Variant::TwoStage(_) => VariantKind::TwoStage,
            Variant::CombTwoStage(_) => VariantKind::CombTwoStage,
        }
    }

    pub fn base(&self) -> &Instance {
        match self {
            Variant::Interdiction(v) => &v.base,
            Variant::CombInterdiction(v) => &v.base,
            Variant::Regret(v) => &v.base,
            Variant::RestrictedRegret(v) => &v.base,
            Variant::TwoStage(v) => &v.base,
            Variant::CombTwoStage(v) => &v.base,
        }
    }

    pub(crate) fn mismatch(&self, expected: &str) -> Error {
        Error::FamilyMismatch {
            expected: expected.to_string(),
            found: self.kind().id().to_string(),
        }
    }
}

/// `c_S`: the upper bound on `S`, the lower bound elsewhere.
pub fn canonical_scenario(lower: &[i64], upper: &[i64], universe: &Universe, s: &Subset) -> Result<Vec<i64>> {
    let mask = universe.mask(s)?;
    Ok(mask
        .iter()
        .enumerate()
        .map(|(i, &m)| if m { upper[i] } else { lower[i] })
        .collect())
}

/// A combinatorial variant viewed as a subset problem over the base universe.
#[derive(Clone, Debug)]
pub struct WrappedVariant {
    variant: Variant,
}

/// Views a combinatorial variant as a subset problem.
pub fn wrap_as_ssp(v: &Variant) -> Result<WrappedVariant> {
    if v.kind().is_combinatorial() {
        Ok(WrappedVariant { variant: v.clone() })
    } else {
        Err(v.mismatch("a combinatorial variant"))
    }
}

impl WrappedVariant {
    pub fn variant(&self) -> &Variant {
        &self.variant
    }

    fn solutions(&self, budget: u64) -> Result<Vec<Subset>> {
        match &self.variant {
            Variant::CombInterdiction(v) => game::interdiction::admissible_blockers(v, budget),
            Variant::RestrictedRegret(v) => game::regret::restricted_solutions(v, budget),
            Variant::CombTwoStage(v) => game::two_stage::surviving_first_stages(v, budget),
            _ => unreachable!("wrap_as_ssp admits combinatorial variants only"),
        }
    }
}

impl Ssp for WrappedVariant {
    fn universe(&self) -> &Universe {
        self.variant.base().universe()
    }

    fn describe(&self) -> String {
        format!("{} over {}", self.variant.kind(), self.variant.base().kind())
    }

    fn accepts(&self, s: &Subset) -> Result<bool> {
        if let Some(e) = s.iter().find(|e| !self.universe().contains(e)) {
            return Err(Error::ForeignElement(*e));
        }
        Ok(self.solutions(crate::DEFAULT_BUDGET)?.contains(s))
    }

    fn enumerate_solutions(&self, budget: u64) -> Result<SolutionFamily> {
        match self.solutions(budget) {
            Ok(members) => Ok(SolutionFamily::complete(members)),
            Err(Error::BudgetExceeded(_)) => Ok(SolutionFamily::partial([])),
            Err(e) => Err(e),
        }
    }
}

/// Solutions of `base` as bitsets over its universe; `BudgetExceeded` if the
/// enumeration does not finish.
pub(crate) fn solution_bits(base: &Instance, budget: u64) -> Result<Vec<Bits>> {
    let family = base.enumerate_solutions(budget);
    let members = family.require_complete(budget)?;
    members.iter().map(|s| Bits::of(base.universe(), s)).collect()
}

/// Feasible sets of an LOP `base` as bitsets.
pub(crate) fn feasible_bits(base: &Instance, budget: u64) -> Result<Vec<Bits>> {
    let family = base.enumerate_feasible(budget)?;
    let members = family.require_complete(budget)?;
    members.iter().map(|s| Bits::of(base.universe(), s)).collect()
}

/// Positions of the members of `s` in `universe`.
pub(crate) fn positions(universe: &Universe, s: &Subset) -> Result<Vec<usize>> {
    s.iter()
        .map(|e| universe.index_of(e).ok_or(Error::ForeignElement(*e)))
        .collect()
}

/// Per-element values aligned with `universe`, defaulting to zero.
pub fn aligned(universe: &Universe, entries: impl IntoIterator<Item = (ElementId, i64)>) -> Result<Vec<i64>> {
    let mut values = vec![0; universe.len()];
    for (e, v) in entries {
        let i = universe.index_of(&e).ok_or(Error::ForeignElement(e))?;
        values[i] = v;
    }
    Ok(values)
}

#[cfg(test)]
mod tests;
