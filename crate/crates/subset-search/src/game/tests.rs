use proptest::prelude::*;

use super::*;
use crate::catalog::{Cnf, Graph, GraphBound, Instance, Payload};
use crate::element::ElementId;
use crate::generate::Sampler;
use crate::variant::{
    CombInterdictionInstance, CombTwoStageInstance, InterdictionInstance, RegretInstance, RestrictedRegretInstance,
};

const BUDGET: u64 = SOLVER_BUDGET;

fn sat(n: u32, clauses: Vec<Vec<i32>>) -> Instance {
    Instance::new(Payload::Sat(Cnf::new(n, clauses))).unwrap()
}

fn lits(codes: &[i32]) -> Subset {
    Subset::new(codes.iter().map(|&c| ElementId::literal(c)))
}

fn path(n: u32, k: i64) -> Instance {
    let edges: Vec<(u32, u32)> = (1..n).map(|i| (i - 1, i)).collect();
    Instance::new(Payload::VertexCover(GraphBound {
        graph: Graph::new(n, edges),
        k,
    }))
    .unwrap()
}

#[test]
fn one_blocked_literal_cannot_stop_a_disjunction() {
    let v = CombInterdictionInstance::new(sat(2, vec![vec![1, 2]]), lits(&[1, 2]), 1).unwrap();
    let value = solve_interdiction(&Variant::CombInterdiction(v), BUDGET).unwrap();
    assert!(!value.decision);
    assert_eq!(value.value, Some(2));
    assert_eq!(value.witness, Some(lits(&[1, 2])));
}

#[test]
fn empty_solution_family_is_blocked_by_nothing() {
    let v = CombInterdictionInstance::new(sat(1, vec![vec![1], vec![-1]]), lits(&[1]), 0).unwrap();
    let value = solve_interdiction(&Variant::CombInterdiction(v), BUDGET).unwrap();
    assert!(value.decision);
    assert_eq!(value.witness, Some(Subset::empty()));
}

#[test]
fn cheapest_cost_blocker_is_lexicographically_least() {
    // Covers of size <= 1 on the path 0-1-2 are exactly {1}.
    let base = path(3, 1);
    let v = InterdictionInstance::new(base, vec![1, 1, 1], 1).unwrap();
    let value = solve_interdiction(&Variant::Interdiction(v), BUDGET).unwrap();
    assert_eq!(value.value, Some(1));
    assert_eq!(value.witness, Some(Subset::new([ElementId::Vertex(1)])));
}

#[test]
fn degenerate_intervals_on_a_single_solution_give_zero_regret() {
    let base = sat(1, vec![vec![1]]);
    let v = RestrictedRegretInstance::new(base, vec![1, 0], vec![1, 0], 0).unwrap();
    let value = solve_min_max_regret(&Variant::RestrictedRegret(v), BUDGET).unwrap();
    assert_eq!((value.decision, value.value), (true, Some(0)));
    assert_eq!(value.witness, Some(lits(&[1])));
}

#[test]
fn regret_on_an_unsatisfiable_base_is_undefined() {
    let v = RestrictedRegretInstance::new(sat(1, vec![vec![1], vec![-1]]), vec![0, 0], vec![1, 1], 0).unwrap();
    assert_eq!(
        solve_min_max_regret(&Variant::RestrictedRegret(v), BUDGET),
        Err(Error::UndefinedRegret)
    );
}

#[test]
fn regret_with_degenerate_intervals_is_the_cost_gap() {
    let mut s = Sampler::new(3);
    for _ in 0..10 {
        let base = s.vertex_cover(5, false);
        let n = base.universe().len();
        let c: Vec<i64> = (0..n).map(|_| s.between(0, 5)).collect();
        let v = RegretInstance::new(base.clone(), c.clone(), c.clone(), 0).unwrap();
        let got = solve_min_max_regret(&Variant::Regret(v), BUDGET).unwrap();
        // With a fixed cost the best regret is attained by the cheapest set: 0.
        assert_eq!(got.value, Some(0));
        let w = got.witness.unwrap();
        let family = base.enumerate_feasible(BUDGET).unwrap();
        let price = |x: &Subset| -> i64 { x.iter().map(|e| c[base.universe().index_of(e).unwrap()]).sum() };
        assert_eq!(price(&w), family.iter().map(price).min().unwrap());
    }
}

#[test]
fn powerless_adversary_lets_the_second_stage_finish() {
    let v = CombTwoStageInstance::new(sat(2, vec![vec![1, 2]]), Subset::empty(), Subset::empty(), 0).unwrap();
    let value = solve_two_stage(&Variant::CombTwoStage(v), BUDGET).unwrap();
    assert!(value.decision);
    assert_eq!(value.witness, Some(Subset::empty()));
}

#[test]
fn adversary_blocking_every_completion_wins() {
    // B covers the second-stage part of every solution and Γ = |B|.
    let base = sat(2, vec![vec![1, 2]]);
    let blockable = lits(&[2, -2]);
    let v = CombTwoStageInstance::new(base, lits(&[1, -1]), blockable, 2).unwrap();
    let value = solve_two_stage(&Variant::CombTwoStage(v), BUDGET).unwrap();
    assert!(!value.decision);
    assert_eq!(value.witness, None);
}

#[test]
fn solvers_reject_the_wrong_family() {
    let v = CombInterdictionInstance::new(sat(1, vec![]), Subset::empty(), 0).unwrap();
    let err = solve_two_stage(&Variant::CombInterdiction(v), BUDGET);
    assert!(matches!(err, Err(Error::FamilyMismatch { .. })));
}

#[test]
fn oversized_nesting_is_refused() {
    let base = sat(12, vec![]);
    let all = base.universe().whole();
    let v = CombInterdictionInstance::new(base, all, 3).unwrap();
    assert!(matches!(
        solve_interdiction(&Variant::CombInterdiction(v), BUDGET),
        Err(Error::BudgetExceeded(_))
    ));
}

#[test]
fn registry_resolves_game_ids() {
    let solvers = Solvers::standard();
    assert_eq!(solvers.ids().collect::<Vec<_>>(), ["interdiction", "regret", "two-stage"]);
    assert!(solvers.get("chess").is_err());
}

fn bits_of(code: u64, pool: &[ElementId]) -> Subset {
    Subset::new(pool.iter().enumerate().filter(|(j, _)| code >> j & 1 == 1).map(|(_, e)| *e))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn qbf_evaluators_agree(seed in any::<u64>()) {
        let phi = Sampler::new(seed).quantified();
        prop_assert_eq!(eval_qbf(&phi).unwrap(), eval_qbf_recursive(&phi).unwrap());
    }

    #[test]
    fn interdiction_witness_hits_everything_and_larger_t_never_hurts(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let base = s.instance(crate::ProblemKind::VertexCover);
        let v = s.comb_interdiction(base);
        let value = solve_interdiction(&Variant::CombInterdiction(v.clone()), BUDGET).unwrap();
        let solutions = v.base().enumerate_solutions(BUDGET);
        if let Some(w) = &value.witness {
            prop_assert!(w.is_subset_of(v.blockable()));
            prop_assert!(solutions.iter().all(|x| x.intersects(w)));
        }
        let looser = CombInterdictionInstance::new(v.base().clone(), v.blockable().clone(), v.threshold() + 1).unwrap();
        let looser = solve_interdiction(&Variant::CombInterdiction(looser), BUDGET).unwrap();
        prop_assert!(!value.decision || looser.decision);
    }

    #[test]
    fn regret_witness_attains_the_value_and_larger_q_never_hurts(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let base = s.instance(crate::ProblemKind::Satisfiability);
        prop_assume!(!base.enumerate_solutions(BUDGET).is_empty());
        let v = s.restricted_regret(base);
        let value = solve_min_max_regret(&Variant::RestrictedRegret(v.clone()), BUDGET).unwrap();
        let family: Vec<Subset> = v.base().enumerate_solutions(BUDGET).into_members().into_iter().collect();
        let w = value.witness.clone().unwrap();
        let u = v.base().universe();
        let c = crate::variant::canonical_scenario(v.lower(), v.upper(), u, &w).unwrap();
        prop_assert_eq!(Some(regret_under(&w, &family, &c, u).unwrap() as i64), value.value);
        let looser = RestrictedRegretInstance::new(v.base().clone(), v.lower().to_vec(), v.upper().to_vec(), v.threshold() + 1).unwrap();
        let looser = solve_min_max_regret(&Variant::RestrictedRegret(looser), BUDGET).unwrap();
        prop_assert!(!value.decision || looser.decision);
    }

    #[test]
    fn two_stage_witness_survives_every_blocker_and_smaller_gamma_never_hurts(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let base = s.instance(crate::ProblemKind::Satisfiability);
        let v = s.comb_two_stage(base);
        let value = solve_two_stage(&Variant::CombTwoStage(v.clone()), BUDGET).unwrap();
        let solutions = v.base().enumerate_solutions(BUDGET);
        if let Some(s1) = &value.witness {
            let pool: Vec<ElementId> = v.blockable().iter().copied().collect();
            for code in 0..1u64 << pool.len() {
                let b = bits_of(code, &pool);
                if b.len() > v.gamma() {
                    continue;
                }
                let completes = solutions
                    .iter()
                    .any(|x| x.intersection(v.first_stage()) == *s1 && !x.intersects(&b));
                prop_assert!(completes);
            }
        }
        if v.gamma() > 0 {
            let weaker = CombTwoStageInstance::new(
                v.base().clone(), v.first_stage().clone(), v.blockable().clone(), v.gamma() as i64 - 1,
            ).unwrap();
            let weaker = solve_two_stage(&Variant::CombTwoStage(weaker), BUDGET).unwrap();
            prop_assert!(!value.decision || weaker.decision);
        }
    }
}
