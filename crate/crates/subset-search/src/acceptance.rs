//! The eight seeded end-to-end checks run by the `acceptance` test target
//! and by `ssp selftest`.

use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::catalog::{Instance, ProblemKind};
use crate::element::Subset;
use crate::error::Result;
use crate::game::{eval_qbf, eval_qbf_recursive, max_regret_by_extremes, regret_under, GameValue, Solvers, SOLVER_BUDGET};
use crate::generate::Sampler;
use crate::lift::{lift, verify_lifted, Families, LiftedReduction};
use crate::reduction::{verify_ssp, Reduction, Registry};
use crate::variant::{canonical_scenario, Variant};
use crate::DEFAULT_BUDGET;

pub const CRITERIA: [(u8, &str); 8] = [
    (1, "catalog reductions preserve solutions"),
    (2, "composed chains preserve solutions"),
    (3, "gadgets agree with QBF evaluation"),
    (4, "lifts preserve decisions and regret values"),
    (5, "cost adaptations agree with combinatorial forms"),
    (6, "canonical scenario attains the worst case"),
    (7, "lifted reductions are solution preserving"),
    (8, "oracle cross-checks"),
];

pub const CHAINS: [&str; 2] = [
    "sat_to_3sat,3sat_to_vertex_cover,vertex_cover_to_dominating_set",
    "3sat_to_dham_path,dham_path_to_dham_cycle,dham_cycle_to_uham_cycle,uham_cycle_to_tsp",
];

/// Enumeration budget for composed chains, whose targets grow fastest.
const CHAIN_BUDGET: u64 = 1 << 23;
/// Largest universe on which criterion 6 enumerates every extreme scenario.
const EXTREME_CAP: usize = 10;
/// Largest universe on which criterion 8 walks every subset.
const PREDICATE_CAP: usize = 12;
/// Failure messages shown per criterion.
const SHOWN: usize = 5;

/// Result of one criterion. `Display` omits the timing so that reports stay
/// byte-identical across runs.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub criterion: u8,
    pub title: &'static str,
    pub checks: usize,
    pub failures: Vec<String>,
    pub elapsed: Duration,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "pass" } else { "FAIL" };
        write!(
            f,
            "criterion {}: {status} ({}/{} checks) {}",
            self.criterion,
            self.checks - self.failures.len(),
            self.checks,
            self.title
        )?;
        for msg in self.failures.iter().take(SHOWN) {
            write!(f, "\n  - {msg}")?;
        }
        if self.failures.len() > SHOWN {
            write!(f, "\n  - ... and {} more", self.failures.len() - SHOWN)?;
        }
        Ok(())
    }
}

type Check = std::result::Result<(), String>;

fn tally(criterion: u8, started: Instant, checks: Vec<Check>) -> Outcome {
    let title = CRITERIA[criterion as usize - 1].1;
    let failures = checks.iter().filter_map(|c| c.clone().err()).collect();
    Outcome {
        criterion,
        title,
        checks: checks.len(),
        failures,
        elapsed: started.elapsed(),
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn context_err(context: &str, e: crate::Error) -> String {
    format!("{context}: {e}")
}

/// Per-criterion seed, so criteria can run alone with the same fixtures.
fn sampler(seed: u64, criterion: u8) -> Sampler {
    Sampler::new(seed.wrapping_add(u64::from(criterion).wrapping_mul(0x9e37_79b9_7f4a_7c15)))
}

fn solve(v: &Variant) -> Result<GameValue> {
    Solvers::standard().get(v.kind().game())?.solve(v, SOLVER_BUDGET)
}

fn verify_reduction(r: &dyn Reduction, x: &Instance, i: usize, budget: u64) -> Check {
    match verify_ssp(r, x, budget) {
        Ok((_, report)) if report.passed() => Ok(()),
        Ok((_, report)) => Err(format!(
            "{} sample {i}: {:?}, equal={} yes_agree={} witness={}",
            r.id(),
            report.verdict,
            report.equal,
            report.yes_agree,
            report
                .witness
                .as_ref()
                .map_or_else(|| "-".into(), |(s, side)| format!("{s} {side:?}"))
        )),
        Err(e) => Err(format!("{} sample {i}: {e}", r.id())),
    }
}

pub fn reduction_sweep(seed: u64, samples: usize) -> Outcome {
    let started = Instant::now();
    let mut s = sampler(seed, 1);
    let cases: Vec<_> = Registry::catalog()
        .iter()
        .flat_map(|r| (0..samples).map(|i| (r.clone(), i)).collect::<Vec<_>>())
        .map(|(r, i)| {
            let x = s.source_for(r.as_ref());
            (r, i, x)
        })
        .collect();
    let checks = cases.par_iter().map(|(r, i, x)| verify_reduction(r.as_ref(), x, *i, DEFAULT_BUDGET)).collect();
    tally(1, started, checks)
}

pub fn chain_sweep(seed: u64, samples: usize) -> Outcome {
    let started = Instant::now();
    let reg = Registry::catalog();
    let mut s = sampler(seed, 2);
    let mut cases = Vec::new();
    for ids in CHAINS {
        let chain = reg.chain(ids).expect("catalog chain");
        for i in 0..samples {
            let x = s.source_for(chain.as_ref());
            cases.push((chain.clone(), i, x));
        }
    }
    let checks = cases.par_iter().map(|(r, i, x)| verify_reduction(r.as_ref(), x, *i, CHAIN_BUDGET)).collect();
    tally(2, started, checks)
}

pub fn gadget_sweep(seed: u64, samples: usize) -> Outcome {
    let started = Instant::now();
    let mut s = sampler(seed, 3);
    let families = Families::standard();
    let mut cases = Vec::new();
    for i in 0..samples {
        let phi = s.exists_forall_dnf(3, 3, 4);
        cases.push(("interdiction", i, phi.clone()));
        cases.push(("restricted-regret", i, phi));
    }
    for i in 0..samples {
        cases.push(("two-stage", i, s.exists_forall_exists_cnf(2)));
    }
    let checks = cases
        .par_iter()
        .map(|(family, i, phi)| {
            let context = format!("{family} formula {i}");
            let truth = eval_qbf(phi).map_err(|e| context_err(&context, e))?;
            let gadget = families.get(family).and_then(|f| f.gadget(phi)).map_err(|e| context_err(&context, e))?;
            let value = solve(&gadget).map_err(|e| context_err(&context, e))?;
            ensure(value.decision == truth, || {
                format!("{context}: qbf={truth} gadget={} ({})", value.decision, phi.shape())
            })
        })
        .collect();
    tally(3, started, checks)
}

/// Variant fixtures over 3SAT bases for each lifted family.
fn three_sat_variants(s: &mut Sampler, samples: usize) -> Vec<(&'static str, usize, Variant)> {
    let mut out = Vec::new();
    for i in 0..samples {
        let base = s.three_sat(3, 3);
        out.push(("interdiction", i, Variant::CombInterdiction(s.comb_interdiction(base))));
        let base = s.satisfiable_three_sat();
        out.push(("restricted-regret", i, Variant::RestrictedRegret(s.restricted_regret(base))));
        let base = s.three_sat(3, 3);
        out.push(("two-stage", i, Variant::CombTwoStage(s.comb_two_stage(base))));
    }
    out
}

fn lifted(reduction: &str, family: &str) -> LiftedReduction {
    let r = Registry::catalog().get(reduction).expect("catalog reduction");
    lift(r, Families::standard().get(family).expect("standard family"))
}

pub fn lift_sweep(seed: u64, samples: usize) -> Outcome {
    let started = Instant::now();
    let mut s = sampler(seed, 4);
    let mut cases = Vec::new();
    for reduction in ["3sat_to_vertex_cover", "3sat_to_subset_sum"] {
        for (family, i, v) in three_sat_variants(&mut s, samples) {
            cases.push((lifted(reduction, family), i, v));
        }
    }
    let checks = cases
        .par_iter()
        .map(|(r, i, v)| {
            let context = format!("{} fixture {i}", r.id());
            let out = r.apply(v).map_err(|e| context_err(&context, e))?;
            let a = solve(v).map_err(|e| context_err(&context, e))?;
            let b = solve(&out.target).map_err(|e| context_err(&context, e))?;
            ensure(a.decision == b.decision, || {
                format!("{context}: source decision {} target {}", a.decision, b.decision)
            })?;
            ensure(a.value == b.value || !matches!(v, Variant::RestrictedRegret(_)), || {
                format!("{context}: source regret {:?} target {:?}", a.value, b.value)
            })
        })
        .collect();
    tally(4, started, checks)
}

pub fn adaptation_sweep(seed: u64, samples: usize) -> Outcome {
    let started = Instant::now();
    let mut s = sampler(seed, 5);
    let mut cases = Vec::new();
    for i in 0..samples {
        let base = s.vertex_cover(5, false);
        cases.push(("interdiction", i, Variant::CombInterdiction(s.comb_interdiction(base))));
        let base = s.tight_vertex_cover(5);
        cases.push(("restricted-regret", i, Variant::RestrictedRegret(s.restricted_regret(base))));
        let base = s.vertex_cover(5, false);
        cases.push(("two-stage", i, Variant::CombTwoStage(s.comb_two_stage(base))));
    }
    let families = Families::standard();
    let checks = cases
        .par_iter()
        .map(|(family, i, v)| {
            let context = format!("{family} fixture {i}");
            let cost = families.get(family).and_then(|f| f.adapt(v)).map_err(|e| context_err(&context, e))?;
            let a = solve(v).map_err(|e| context_err(&context, e))?;
            let b = solve(&cost).map_err(|e| context_err(&context, e))?;
            ensure(a.decision == b.decision, || {
                format!("{context}: combinatorial {} cost {}", a.decision, b.decision)
            })?;
            ensure(a.value == b.value || *family != "restricted-regret", || {
                format!("{context}: combinatorial regret {:?} cost {:?}", a.value, b.value)
            })
        })
        .collect();
    tally(5, started, checks)
}

/// Regret of every member under its canonical scenario against the maximum
/// over all extreme scenarios.
fn canonical_matches_extremes(family: &[Subset], lower: &[i64], upper: &[i64], x: &Instance) -> Result<Option<Subset>> {
    let u = x.universe();
    for s in family {
        let c = canonical_scenario(lower, upper, u, s)?;
        if regret_under(s, family, &c, u)? != max_regret_by_extremes(s, family, lower, upper, u)? {
            return Ok(Some(s.clone()));
        }
    }
    Ok(None)
}

pub fn canonical_sweep(seed: u64, samples: usize) -> Outcome {
    let started = Instant::now();
    let mut s = sampler(seed, 6);
    let mut cases = Vec::new();
    for &kind in ProblemKind::ALL.iter().filter(|k| k.is_lop()) {
        let mut i = 0;
        while i < samples {
            let base = s.instance(kind);
            if base.universe().len() > EXTREME_CAP {
                continue;
            }
            cases.push((kind, i, Variant::Regret(s.regret(base.clone(), 6))));
            if !base.enumerate_solutions(DEFAULT_BUDGET).is_empty() {
                cases.push((kind, i, Variant::RestrictedRegret(s.restricted_regret(base))));
            }
            i += 1;
        }
    }
    let checks = cases
        .par_iter()
        .map(|(kind, i, v)| {
            let context = format!("{} {kind} fixture {i}", v.kind());
            let run = || -> Result<Option<Subset>> {
                match v {
                    Variant::Regret(r) => {
                        let family: Vec<Subset> = r.base().enumerate_feasible(DEFAULT_BUDGET)?.into_members().into_iter().collect();
                        canonical_matches_extremes(&family, r.lower(), r.upper(), r.base())
                    }
                    Variant::RestrictedRegret(r) => {
                        let family: Vec<Subset> = r.base().enumerate_solutions(DEFAULT_BUDGET).into_members().into_iter().collect();
                        canonical_matches_extremes(&family, r.lower(), r.upper(), r.base())
                    }
                    _ => unreachable!("only regret fixtures"),
                }
            };
            match run().map_err(|e| context_err(&context, e))? {
                None => Ok(()),
                Some(bad) => Err(format!("{context}: canonical regret of {bad} misses the extreme maximum")),
            }
        })
        .collect();
    tally(6, started, checks)
}

pub fn lifted_ssp_sweep(seed: u64, samples: usize) -> Outcome {
    let started = Instant::now();
    let mut s = sampler(seed, 7);
    let cases: Vec<_> = three_sat_variants(&mut s, samples)
        .into_iter()
        .map(|(family, i, v)| (lifted("3sat_to_vertex_cover", family), i, v))
        .collect();
    let checks = cases
        .par_iter()
        .map(|(r, i, v)| {
            let context = format!("{} fixture {i}", r.id());
            let (_, report) = verify_lifted(r, v, SOLVER_BUDGET).map_err(|e| context_err(&context, e))?;
            ensure(report.passed(), || {
                format!("{context}: {:?} witness {:?}", report.verdict, report.witness)
            })
        })
        .collect();
    tally(7, started, checks)
}

/// Every subset of the universe, in mask order.
fn all_subsets(x: &Instance) -> impl Iterator<Item = Subset> + '_ {
    let u = x.universe();
    (0..1u32 << u.len()).map(move |code| {
        let positions: Vec<usize> = (0..u.len()).filter(|j| code >> j & 1 == 1).collect();
        u.subset_of(&positions)
    })
}

/// `S(x)` derived from the feasible family and the cost threshold, checked
/// against the solution predicate on every subset.
fn lop_matches_predicate(x: &Instance) -> Result<Option<Subset>> {
    let extras = x.lop_extras()?;
    let feasible = x.enumerate_feasible(DEFAULT_BUDGET)?;
    let u = x.universe();
    for t in all_subsets(x) {
        let derived = feasible.contains(&t) && extras.cost_of_mask(&u.mask(&t)?) <= i128::from(extras.threshold);
        if derived != x.is_solution(&t)? {
            return Ok(Some(t));
        }
    }
    Ok(None)
}

pub fn oracle_sweep(seed: u64, formulas: usize, instances: usize) -> Outcome {
    let started = Instant::now();
    let mut s = sampler(seed, 8);
    let phis: Vec<_> = (0..formulas).map(|_| s.quantified()).collect();
    let mut checks: Vec<Check> = phis
        .par_iter()
        .enumerate()
        .map(|(i, phi)| {
            let context = format!("formula {i}");
            let a = eval_qbf(phi).map_err(|e| context_err(&context, e))?;
            let b = eval_qbf_recursive(phi).map_err(|e| context_err(&context, e))?;
            ensure(a == b, || format!("{context} ({}): block evaluator {a}, recursive {b}", phi.shape()))
        })
        .collect();
    let mut bases = Vec::new();
    for &kind in ProblemKind::ALL.iter().filter(|k| k.is_lop()) {
        let mut i = 0;
        while i < instances {
            let x = s.instance(kind);
            if x.universe().len() <= PREDICATE_CAP {
                bases.push((kind, i, x));
                i += 1;
            }
        }
    }
    let predicates: Vec<Check> = bases.par_iter().map(|(kind, i, x)| {
        let context = format!("{kind} fixture {i}");
        match lop_matches_predicate(x).map_err(|e| context_err(&context, e))? {
            None => Ok(()),
            Some(t) => Err(format!("{context}: derived and boxed predicates differ on {t}")),
        }
    }).collect();
    checks.extend(predicates);
    tally(8, started, checks)
}

/// Runs one criterion at its documented sample sizes.
pub fn run(criterion: u8, seed: u64) -> Outcome {
    match criterion {
        1 => reduction_sweep(seed, 50),
        2 => chain_sweep(seed, 10),
        3 => gadget_sweep(seed, 50),
        4 => lift_sweep(seed, 20),
        5 => adaptation_sweep(seed, 20),
        6 => canonical_sweep(seed, 10),
        7 => lifted_ssp_sweep(seed, 10),
        8 => oracle_sweep(seed, 200, 10),
        other => panic!("no criterion {other}"),
    }
}

pub fn run_all(seed: u64) -> Vec<Outcome> {
    CRITERIA.iter().map(|&(n, _)| run(n, seed)).collect()
}
