use proptest::prelude::*;

use super::*;
use crate::generate::Sampler;
use crate::reduction::Registry;
use crate::DEFAULT_BUDGET;

fn diagnostics(payload: Payload) -> Vec<String> {
    match Instance::new(payload) {
        Err(Error::Invalid(d)) => d.0,
        other => panic!("expected diagnostics, got {other:?}"),
    }
}

/// Every subset of the universe, in mask order.
fn all_subsets(u: &Universe) -> impl Iterator<Item = Subset> + '_ {
    (0..1u32 << u.len()).map(move |code| {
        let positions: Vec<usize> = (0..u.len()).filter(|j| code >> j & 1 == 1).collect();
        u.subset_of(&positions)
    })
}

#[test]
fn short_three_sat_clause_is_diagnosed() {
    let d = diagnostics(Payload::ThreeSat(Cnf::new(2, vec![vec![1, 2]])));
    assert!(d.iter().any(|m| m.contains("arity ≠ 3")), "{d:?}");
}

#[test]
fn incomplete_tsp_graph_is_diagnosed() {
    let d = diagnostics(Payload::Tsp(Tsp {
        graph: Graph::new(3, [(0, 1), (1, 2)]),
        weights: vec![1, 1],
        k: 3,
    }));
    assert!(d.contains(&"graph not complete".to_string()), "{d:?}");
}

#[test]
fn triangle_cover_is_valid() {
    let x = Instance::new(Payload::VertexCover(GraphBound {
        graph: Graph::new(3, [(0, 1), (0, 2), (1, 2)]),
        k: 2,
    }))
    .unwrap();
    assert_eq!(x.universe().len(), 3);
    // Any two of the three vertices.
    assert_eq!(x.enumerate_solutions(DEFAULT_BUDGET).len(), 3);
}

#[test]
fn hitting_set_example() {
    let x = Instance::new(Payload::HittingSet(SetSystem {
        ground: 4,
        sets: vec![vec![1, 2], vec![2, 3]],
        k: 1,
    }))
    .unwrap();
    assert!(x.is_solution(&Subset::new([ElementId::Number(2)])).unwrap());
    assert!(!x.is_solution(&Subset::new([ElementId::Number(1)])).unwrap());
}

#[test]
fn deleting_one_vertex_breaks_a_two_cycle() {
    let x = Instance::new(Payload::FeedbackVertexSet(DigraphBound {
        digraph: Digraph::new(2, [(0, 1), (1, 0)]),
        k: 1,
    }))
    .unwrap();
    assert!(x.is_solution(&Subset::new([ElementId::Vertex(0)])).unwrap());
    assert!(!x.is_solution(&Subset::empty()).unwrap());
}

#[test]
fn steiner_target_of_the_figure_formula_has_a_tree_per_assignment() {
    let x = Instance::new(Payload::ThreeSat(Cnf::new(3, vec![vec![-1, -2, 3]]))).unwrap();
    let out = Registry::catalog().get("3sat_to_steiner_tree").unwrap().apply(&x).unwrap();
    let targets = out.target.enumerate_solutions(DEFAULT_BUDGET);
    let image = out.embedding.image();
    for s in x.enumerate_solutions(DEFAULT_BUDGET).iter() {
        let fs = out.embedding.image_of(s).unwrap();
        let tree = targets.iter().find(|t| t.intersection(&image) == fs);
        assert!(out.target.is_solution(tree.expect("a tree for every assignment")).unwrap());
    }
}

#[test]
fn partition_keeps_the_last_element() {
    let x = Instance::new(Payload::Partition(Partition { values: vec![1, 1] })).unwrap();
    let family = x.enumerate_solutions(DEFAULT_BUDGET);
    assert_eq!(family.iter().cloned().collect::<Vec<_>>(), vec![Subset::new([ElementId::Number(1)])]);
}

#[test]
fn dimacs_example_has_four_literals() {
    let x = crate::format::parse_instance("ssp sat v1\np cnf 2 1\n1 2 0\n").unwrap();
    assert_eq!(x.universe().len(), 4);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// The pruned enumerator agrees with the solution predicate on every subset.
    #[test]
    fn enumeration_matches_the_predicate(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        for &kind in ProblemKind::ALL {
            let x = s.instance(kind);
            let family = x.enumerate_solutions(DEFAULT_BUDGET);
            prop_assert!(family.is_complete());
            let mut brute: Vec<Subset> = all_subsets(x.universe()).filter(|t| x.is_solution(t).unwrap()).collect();
            brute.sort();
            prop_assert_eq!(family.iter().cloned().collect::<Vec<_>>(), brute, "{}", kind);
        }
    }

    /// For LOP kinds, solutions are the feasible sets within the threshold.
    #[test]
    fn lop_solutions_are_cheap_feasible_sets(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        for &kind in ProblemKind::ALL.iter().filter(|k| k.is_lop()) {
            let x = s.instance(kind);
            let extras = x.lop_extras().unwrap();
            let feasible = x.enumerate_feasible(DEFAULT_BUDGET).unwrap();
            for t in all_subsets(x.universe()) {
                let mask = x.universe().mask(&t).unwrap();
                let is_feasible = x.is_feasible(&t).unwrap();
                prop_assert_eq!(feasible.contains(&t), is_feasible);
                let cheap = is_feasible && extras.cost_of_mask(&mask) <= extras.threshold as i128;
                prop_assert_eq!(x.is_solution(&t).unwrap(), cheap, "{} {}", kind, t);
            }
        }
    }
}
