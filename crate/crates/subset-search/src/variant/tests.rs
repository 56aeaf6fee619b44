use super::*;
use crate::catalog::{Cnf, Graph, GraphBound, Payload};
use crate::generate::Sampler;

fn sat(n: u32, clauses: Vec<Vec<i32>>) -> Instance {
    Instance::new(Payload::Sat(Cnf::new(n, clauses))).unwrap()
}

fn lits(codes: &[i32]) -> Subset {
    Subset::new(codes.iter().map(|&c| ElementId::literal(c)))
}

fn triangle(k: i64) -> Instance {
    Instance::new(Payload::VertexCover(GraphBound {
        graph: Graph::new(3, [(0, 1), (0, 2), (1, 2)]),
        k,
    }))
    .unwrap()
}

#[test]
fn blocking_the_only_literal_kills_every_assignment() {
    let v = CombInterdictionInstance::new(sat(1, vec![vec![1]]), lits(&[1]), 1).unwrap();
    let w = wrap_as_ssp(&Variant::CombInterdiction(v)).unwrap();
    let family = w.enumerate_solutions(crate::DEFAULT_BUDGET).unwrap();
    assert_eq!(family.members().iter().cloned().collect::<Vec<_>>(), vec![lits(&[1])]);
    assert!(w.accepts(&lits(&[1])).unwrap());
    assert!(!w.accepts(&Subset::empty()).unwrap());
}

#[test]
fn degenerate_zero_bounds_keep_every_solution() {
    let base = sat(2, vec![vec![1, 2]]);
    let n = base.universe().len();
    let v = RestrictedRegretInstance::new(base.clone(), vec![0; n], vec![0; n], 0).unwrap();
    let w = wrap_as_ssp(&Variant::RestrictedRegret(v)).unwrap();
    assert_eq!(
        w.enumerate_solutions(crate::DEFAULT_BUDGET).unwrap().members(),
        base.enumerate_solutions(crate::DEFAULT_BUDGET).members()
    );
}

#[test]
fn zero_gamma_first_stages_are_solution_prefixes() {
    let base = sat(2, vec![vec![1, 2], vec![-1, -2]]);
    let v = CombTwoStageInstance::new(base.clone(), lits(&[1, -1]), Subset::empty(), 0).unwrap();
    let w = wrap_as_ssp(&Variant::CombTwoStage(v)).unwrap();
    let got = w.enumerate_solutions(crate::DEFAULT_BUDGET).unwrap();
    assert_eq!(got.members().iter().cloned().collect::<Vec<_>>(), vec![lits(&[1]), lits(&[-1])]);
}

#[test]
fn cost_forms_do_not_wrap() {
    let v = InterdictionInstance::new(triangle(2), vec![1; 3], 1).unwrap();
    assert!(matches!(
        wrap_as_ssp(&Variant::Interdiction(v)),
        Err(Error::FamilyMismatch { .. })
    ));
}

#[test]
fn negative_gamma_is_rejected_and_large_gamma_is_clamped() {
    let costs = vec![1; 3];
    let two = |g| TwoStageInstance::new(triangle(2), costs.clone(), costs.clone(), costs.clone(), 2, g);
    assert!(matches!(two(-1), Err(Error::Invalid(_))));
    let clamped = two(9).unwrap();
    assert_eq!(clamped.gamma(), 3);
    assert!(clamped.clamp_note().unwrap().contains("clamped"));
    assert!(two(3).unwrap().clamp_note().is_none());
    let comb = CombTwoStageInstance::new(triangle(2), Subset::empty(), Subset::empty(), -2);
    assert!(matches!(comb, Err(Error::Invalid(_))));
}

#[test]
fn structural_checks() {
    let base = sat(1, vec![]);
    assert!(CombInterdictionInstance::new(base.clone(), lits(&[2]), 0).is_err());
    assert!(RestrictedRegretInstance::new(base.clone(), vec![0, 0], vec![2, 0], 0).is_err());
    assert!(RestrictedRegretInstance::new(base.clone(), vec![1, 0], vec![0, 0], 0).is_err());
    assert!(CombTwoStageInstance::new(base.clone(), lits(&[1]), lits(&[1]), 0).is_err());
    assert!(matches!(
        RegretInstance::new(base, vec![0, 0], vec![0, 0], 0),
        Err(Error::NotAnLop(_))
    ));
}

#[test]
fn canonical_scenario_extremes() {
    let u = triangle(2).universe().clone();
    let (lo, hi) = (vec![1, 2, 3], vec![4, 5, 6]);
    assert_eq!(canonical_scenario(&lo, &hi, &u, &Subset::empty()).unwrap(), lo);
    assert_eq!(canonical_scenario(&lo, &hi, &u, &u.whole()).unwrap(), hi);
    let one = Subset::new([ElementId::Vertex(1)]);
    assert_eq!(canonical_scenario(&lo, &hi, &u, &one).unwrap(), vec![1, 5, 3]);
}

#[test]
fn canonical_scenario_attains_the_extreme_maximum() {
    let mut s = Sampler::new(5);
    for _ in 0..10 {
        let base = s.vertex_cover(5, false);
        let v = s.regret(base, 4);
        let u = v.base().universe();
        let family: Vec<Subset> = v.base().enumerate_feasible(1 << 20).unwrap().into_members().into_iter().collect();
        for x in &family {
            let c = canonical_scenario(v.lower(), v.upper(), u, x).unwrap();
            let canonical = crate::game::regret_under(x, &family, &c, u).unwrap();
            let extreme = crate::game::max_regret_by_extremes(x, &family, v.lower(), v.upper(), u).unwrap();
            assert_eq!(canonical, extreme);
        }
    }
}

#[test]
fn wrapped_interdiction_matches_its_definition() {
    let mut s = Sampler::new(17);
    for _ in 0..20 {
        let base = s.instance(crate::ProblemKind::VertexCover);
        let v = s.comb_interdiction(base);
        let solutions = v.base().enumerate_solutions(1 << 20);
        let w = wrap_as_ssp(&Variant::CombInterdiction(v.clone())).unwrap();
        let got = w.enumerate_solutions(1 << 22).unwrap();
        let mask_count = 1u32 << v.blockable().len();
        let mut expected = Vec::new();
        for code in 0..mask_count {
            let b = Subset::new(
                v.blockable()
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| code >> j & 1 == 1)
                    .map(|(_, e)| *e),
            );
            if b.len() as i64 <= v.threshold() && solutions.iter().all(|s| s.intersects(&b)) {
                expected.push(b);
            }
        }
        expected.sort();
        assert_eq!(got.members().iter().cloned().collect::<Vec<_>>(), expected);
    }
}

#[test]
fn variant_ids_round_trip() {
    for k in VariantKind::ALL {
        assert_eq!(k.id().parse::<VariantKind>().unwrap(), k);
    }
    assert!("robust".parse::<VariantKind>().is_err());
}
