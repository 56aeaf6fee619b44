use super::*;
use crate::catalog::{Cnf, Graph, GraphBound, Payload};
use crate::element::{ElementId, Lit};
use crate::game::qbf::{eval_qbf, MatrixForm};
use crate::game::{solve_interdiction, solve_min_max_regret, solve_two_stage, SOLVER_BUDGET};
use crate::generate::Sampler;
use crate::reduction::Registry;

fn formula(blocks: Vec<Vec<u32>>, form: MatrixForm, m: &[&[i32]]) -> QuantifiedFormula {
    let n = blocks.iter().flatten().copied().max().unwrap_or(0);
    let matrix = m
        .iter()
        .map(|t| t.iter().map(|&l| Lit::from_dimacs(l).unwrap()).collect())
        .collect();
    QuantifiedFormula::new(n, blocks, form, matrix).unwrap()
}

fn lits(codes: &[i32]) -> Subset {
    Subset::new(codes.iter().map(|&c| ElementId::literal(c)))
}

fn true_dnf() -> QuantifiedFormula {
    formula(vec![vec![1], vec![2]], MatrixForm::Dnf, &[&[1, 2], &[1, -2]])
}

fn false_dnf() -> QuantifiedFormula {
    formula(vec![vec![1], vec![2]], MatrixForm::Dnf, &[&[1, 2]])
}

fn decide(v: &Variant) -> bool {
    let value = match v.kind().game() {
        "interdiction" => solve_interdiction(v, SOLVER_BUDGET),
        "regret" => solve_min_max_regret(v, SOLVER_BUDGET),
        _ => solve_two_stage(v, SOLVER_BUDGET),
    };
    value.unwrap().decision
}

#[test]
fn interdiction_gadget_layout() {
    let g = gadget_interdiction(&true_dnf()).unwrap();
    // x = 1, y = 2, x^t = 3, x^f = 4, s = 5, s_1 = 6.
    assert_eq!(g.blockable(), &lits(&[3, 4]));
    assert_eq!(g.threshold(), 1);
    let Payload::Sat(cnf) = g.base().payload() else { panic!() };
    assert_eq!(
        *cnf,
        Cnf::new(6, vec![vec![4, -2, 5], vec![4, 2, 5], vec![3, -6], vec![4, -6], vec![-5, 6]])
    );
    assert!(decide(&Variant::CombInterdiction(g)));
    assert!(!decide(&Variant::CombInterdiction(gadget_interdiction(&false_dnf()).unwrap())));
}

#[test]
fn regret_gadget_examples() {
    let g = gadget_regret(&true_dnf()).unwrap();
    assert_eq!(g.threshold(), 1);
    let value = solve_min_max_regret(&Variant::RestrictedRegret(g), SOLVER_BUDGET).unwrap();
    assert!(value.decision);
    let g = gadget_regret(&false_dnf()).unwrap();
    let value = solve_min_max_regret(&Variant::RestrictedRegret(g), SOLVER_BUDGET).unwrap();
    assert_eq!((value.decision, value.value), (false, Some(2)));
}

#[test]
fn two_stage_gadget_examples() {
    let yes = formula(vec![vec![1], vec![2], vec![3]], MatrixForm::Cnf, &[&[1, 2, 3]]);
    let g = gadget_two_stage(&yes).unwrap();
    assert_eq!(g.first_stage(), &lits(&[1, -1]));
    assert_eq!(g.blockable(), &lits(&[4, 5]));
    assert_eq!(g.gamma(), 1);
    assert!(decide(&Variant::CombTwoStage(g)));
    let no = formula(vec![vec![1], vec![2], vec![3]], MatrixForm::Cnf, &[&[2], &[-2]]);
    assert!(!decide(&Variant::CombTwoStage(gadget_two_stage(&no).unwrap())));
}

#[test]
fn gadgets_check_the_prefix() {
    let cnf = formula(vec![vec![1], vec![2]], MatrixForm::Cnf, &[&[1]]);
    assert!(matches!(gadget_interdiction(&cnf), Err(Error::PrefixMismatch(_))));
    assert!(matches!(gadget_regret(&cnf), Err(Error::PrefixMismatch(_))));
    assert!(matches!(gadget_two_stage(&true_dnf()), Err(Error::PrefixMismatch(_))));
}

#[test]
fn gadgets_agree_with_the_qbf_oracle_on_a_small_sweep() {
    let mut s = Sampler::new(41);
    for _ in 0..10 {
        let phi = s.exists_forall_dnf(2, 2, 3);
        let truth = eval_qbf(&phi).unwrap();
        assert_eq!(decide(&Variant::CombInterdiction(gadget_interdiction(&phi).unwrap())), truth, "{phi:?}");
        assert_eq!(decide(&Variant::RestrictedRegret(gadget_regret(&phi).unwrap())), truth, "{phi:?}");
        let psi = s.exists_forall_exists_cnf(2);
        assert_eq!(decide(&Variant::CombTwoStage(gadget_two_stage(&psi).unwrap())), eval_qbf(&psi).unwrap());
    }
}

fn figure_formula() -> Instance {
    Instance::new(Payload::ThreeSat(Cnf::new(3, vec![vec![-1, -2, 3]]))).unwrap()
}

fn lifted(family: &str) -> LiftedReduction {
    let r = Registry::catalog().get("3sat_to_vertex_cover").unwrap();
    lift(r, Families::standard().get(family).unwrap())
}

#[test]
fn interdiction_lift_maps_the_blockable_set() {
    let v = CombInterdictionInstance::new(figure_formula(), lits(&[-1]), 1).unwrap();
    let v = Variant::CombInterdiction(v);
    let r = lifted("interdiction");
    assert_eq!(r.provenance(), Provenance::Lifted);
    let out = r.apply(&v).unwrap();
    let Variant::CombInterdiction(t) = &out.target else { panic!() };
    let image = out.embedding.get(&ElementId::literal(-1)).unwrap();
    assert_eq!(t.blockable(), &Subset::new([image]));
    assert_eq!(t.threshold(), 1);
    assert_eq!(decide(&v), decide(&out.target));
    let (_, report) = verify_lifted(&r, &v, SOLVER_BUDGET).unwrap();
    assert!(report.passed());
}

#[test]
fn regret_lift_preserves_the_value() {
    let n = figure_formula().universe().len();
    let upper = (0..n).map(|i| (i % 2) as i64).collect();
    let v = RestrictedRegretInstance::new(figure_formula(), vec![0; n], upper, 1).unwrap();
    let v = Variant::RestrictedRegret(v);
    let out = lifted("restricted-regret").apply(&v).unwrap();
    let a = solve_min_max_regret(&v, SOLVER_BUDGET).unwrap();
    let b = solve_min_max_regret(&out.target, SOLVER_BUDGET).unwrap();
    assert_eq!(a.value, b.value);
}

#[test]
fn regret_lift_requires_a_solution() {
    let unsat = Instance::new(Payload::ThreeSat(Cnf::new(
        3,
        (0..8)
            .map(|m: i32| (1..=3).map(|v| if m >> (v - 1) & 1 == 1 { v } else { -v }).collect())
            .collect(),
    )))
    .unwrap();
    let v = RestrictedRegretInstance::new(unsat, vec![0; 6], vec![0; 6], 0).unwrap();
    let err = lifted("regret").apply(&Variant::RestrictedRegret(v));
    assert_eq!(err, Err(Error::UndefinedRegret));
}

#[test]
fn two_stage_lift_without_blockers_is_plain_completability() {
    let v = CombTwoStageInstance::new(figure_formula(), lits(&[1, -1]), Subset::empty(), 0).unwrap();
    let v = Variant::CombTwoStage(v);
    let out = lifted("two-stage").apply(&v).unwrap();
    assert!(decide(&v));
    assert!(decide(&out.target));
}

#[test]
fn lifting_the_wrong_family_is_rejected() {
    let v = CombInterdictionInstance::new(figure_formula(), Subset::empty(), 0).unwrap();
    let err = lifted("two-stage").apply(&Variant::CombInterdiction(v));
    assert!(matches!(err, Err(Error::FamilyMismatch { .. })));
}

#[test]
fn interdiction_costs_follow_the_blockable_set() {
    let base = Instance::new(Payload::VertexCover(GraphBound {
        graph: Graph::new(2, [(0, 1)]),
        k: 1,
    }))
    .unwrap();
    let v = CombInterdictionInstance::new(base, Subset::new([ElementId::Vertex(0)]), 1).unwrap();
    let c = adapt_interdiction_cost(&v).unwrap();
    assert_eq!(c.cost(), &[1, 2]);
    assert_eq!(c.threshold(), 1);
}

#[test]
fn regret_costs_scale_the_base_cost() {
    // Three isolated vertices, k = 0: d = 1 per vertex, n = 3.
    let base = Instance::new(Payload::VertexCover(GraphBound {
        graph: Graph::new(3, []),
        k: 0,
    }))
    .unwrap();
    let v = RestrictedRegretInstance::new(base, vec![0; 3], vec![1; 3], 0).unwrap();
    let c = adapt_regret_cost(&v).unwrap();
    assert_eq!((c.lower(), c.upper()), (&[8, 8, 8][..], &[9, 9, 9][..]));
}

#[test]
fn loose_regret_threshold_is_a_precondition_failure() {
    let base = Instance::new(Payload::VertexCover(GraphBound {
        graph: Graph::new(2, [(0, 1)]),
        k: 2,
    }))
    .unwrap();
    let v = RestrictedRegretInstance::new(base, vec![0; 2], vec![0; 2], 0).unwrap();
    assert!(matches!(adapt_regret_cost(&v), Err(Error::Precondition(_))));
}

#[test]
fn two_stage_sentinel_prices_elements_outside_the_first_stage() {
    let base = Instance::new(Payload::VertexCover(GraphBound {
        graph: Graph::new(2, [(0, 1)]),
        k: 2,
    }))
    .unwrap();
    let v = CombTwoStageInstance::new(base, Subset::new([ElementId::Vertex(0)]), Subset::new([ElementId::Vertex(1)]), 1)
        .unwrap();
    let c = adapt_two_stage_cost(&v).unwrap();
    assert_eq!(c.first(), &[1, 3]);
    assert_eq!(c.lower(), &[3, 1]);
    assert_eq!(c.upper(), &[3, 3]);
    assert_eq!((c.threshold(), c.gamma()), (2, 1));
}

#[test]
fn adaptations_agree_with_the_combinatorial_forms() {
    let mut s = Sampler::new(23);
    for _ in 0..10 {
        let base = s.vertex_cover(5, false);
        let v = s.comb_interdiction(base);
        let c = adapt_interdiction_cost(&v).unwrap();
        assert_eq!(decide(&Variant::CombInterdiction(v)), decide(&Variant::Interdiction(c)));

        let base = s.tight_vertex_cover(5);
        let v = s.restricted_regret(base);
        let c = adapt_regret_cost(&v).unwrap();
        let a = solve_min_max_regret(&Variant::RestrictedRegret(v), SOLVER_BUDGET).unwrap();
        let b = solve_min_max_regret(&Variant::Regret(c), SOLVER_BUDGET).unwrap();
        assert_eq!((a.decision, a.value), (b.decision, b.value));

        let base = s.vertex_cover(5, false);
        let v = s.comb_two_stage(base);
        let c = adapt_two_stage_cost(&v).unwrap();
        assert_eq!(decide(&Variant::CombTwoStage(v)), decide(&Variant::TwoStage(c)));
    }
}
