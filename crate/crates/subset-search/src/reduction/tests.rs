use super::*;
use crate::catalog::{Cnf, Graph, GraphBound};
use crate::generate::Sampler;
use crate::DEFAULT_BUDGET;

fn three_sat(n: u32, clauses: Vec<Vec<i32>>) -> Instance {
    Instance::new(Payload::ThreeSat(Cnf::new(n, clauses))).unwrap()
}

fn figure_formula() -> Instance {
    three_sat(3, vec![vec![-1, -2, 3]])
}

#[test]
fn three_sat_to_vertex_cover_matches_the_figure() {
    let r = Registry::catalog().get("3sat_to_vertex_cover").unwrap();
    let out = r.apply(&figure_formula()).unwrap();
    let Payload::VertexCover(g) = out.target.payload() else { panic!() };
    assert_eq!((g.graph.n, g.graph.edges.len(), g.k), (9, 9, 5));
    let (_, report) = verify_ssp(r.as_ref(), &figure_formula(), DEFAULT_BUDGET).unwrap();
    assert!(report.passed());
    assert_eq!(report.images.len(), 7);
    assert_eq!(report.restrictions.len(), 7);
}

#[test]
fn long_clause_is_split_with_one_helper_per_cut() {
    let x = Instance::new(Payload::Sat(Cnf::new(4, vec![vec![1, 2, 3, 4]]))).unwrap();
    let out = Registry::catalog().get("sat_to_3sat").unwrap().apply(&x).unwrap();
    let Payload::ThreeSat(cnf) = out.target.payload() else { panic!() };
    assert_eq!(*cnf, Cnf::new(5, vec![vec![1, 2, 5], vec![-5, 3, 4]]));
}

#[test]
fn empty_formula_keeps_full_assignment_family() {
    let x = Instance::new(Payload::Sat(Cnf::new(2, vec![]))).unwrap();
    let r = Registry::catalog().get("sat_to_3sat").unwrap();
    let (_, report) = verify_ssp(r.as_ref(), &x, DEFAULT_BUDGET).unwrap();
    assert!(report.passed());
    assert_eq!(report.images.len(), 4);
}

#[test]
fn uham_to_tsp_on_triangle_keeps_the_graph() {
    let x = Instance::new(Payload::UndirectedHamiltonianCycle(Graph::new(3, [(0, 1), (0, 2), (1, 2)]))).unwrap();
    let out = Registry::catalog().get("uham_cycle_to_tsp").unwrap().apply(&x).unwrap();
    let Payload::Tsp(t) = out.target.payload() else { panic!() };
    assert_eq!(t.graph.edges, vec![(0, 1), (0, 2), (1, 2)]);
    assert_eq!((t.weights.clone(), t.k), (vec![0, 0, 0], 0));
}

#[test]
fn corrupted_bound_is_caught_with_a_witness() {
    let r = Registry::with_controls().get(CORRUPTED_VERTEX_COVER).unwrap();
    let (_, report) = verify_ssp(r.as_ref(), &figure_formula(), DEFAULT_BUDGET).unwrap();
    assert_eq!(report.verdict, Verdict::Mismatch);
    assert!(!report.equal);
    assert!(matches!(report.witness, Some((_, Side::ImageOnly))));
}

#[test]
fn tiny_budget_is_inconclusive() {
    let r = Registry::catalog().get("3sat_to_vertex_cover").unwrap();
    let (_, report) = verify_ssp(r.as_ref(), &figure_formula(), 3).unwrap();
    assert_eq!(report.verdict, Verdict::Inconclusive);
    assert!(!report.equal);
}

#[test]
fn wrong_source_kind_is_rejected() {
    let vc = Instance::new(Payload::VertexCover(GraphBound {
        graph: Graph::new(2, [(0, 1)]),
        k: 1,
    }))
    .unwrap();
    let r = Registry::catalog().get("3sat_to_vertex_cover").unwrap();
    assert!(matches!(r.apply(&vc), Err(Error::KindMismatch { .. })));
}

#[test]
fn dominating_set_rejects_isolated_vertices() {
    let vc = Instance::new(Payload::VertexCover(GraphBound {
        graph: Graph::new(3, [(0, 1)]),
        k: 1,
    }))
    .unwrap();
    let r = Registry::catalog().get("vertex_cover_to_dominating_set").unwrap();
    assert!(matches!(r.apply(&vc), Err(Error::Precondition(_))));
}

#[test]
fn subset_sum_digit_table_overflows_past_eighteen_digits() {
    let clauses = (0..16).map(|_| vec![1, 2, 3]).collect();
    let x = three_sat(3, clauses);
    let r = Registry::catalog().get("3sat_to_subset_sum").unwrap();
    assert!(matches!(r.apply(&x), Err(Error::ConstructionOverflow(_))));
}

#[test]
fn catalog_tree_shape() {
    let reg = Registry::catalog();
    assert_eq!(reg.len(), 23);
    let path = reg.path(ProblemKind::Satisfiability, ProblemKind::TravelingSalesman).unwrap();
    let ids: Vec<String> = path.iter().map(|r| r.id()).collect();
    assert_eq!(
        ids,
        ["sat_to_3sat", "3sat_to_dham_path", "dham_path_to_dham_cycle", "dham_cycle_to_uham_cycle", "uham_cycle_to_tsp"]
    );
    assert!(reg.path(ProblemKind::Clique, ProblemKind::Satisfiability).is_none());
}

#[test]
fn composition_is_associative_on_outputs() {
    let reg = Registry::catalog();
    let [a, b, c] = ["sat_to_3sat", "3sat_to_vertex_cover", "vertex_cover_to_dominating_set"].map(|id| reg.get(id).unwrap());
    let left = compose(compose(a.clone(), b.clone()).unwrap(), c.clone()).unwrap();
    let right = compose(a, compose(b, c).unwrap()).unwrap();
    let mut s = Sampler::new(7);
    for _ in 0..10 {
        let x = s.sat();
        assert_eq!(left.apply(&x).unwrap(), right.apply(&x).unwrap());
    }
}

#[test]
fn compose_rejects_kind_gaps() {
    let reg = Registry::catalog();
    let err = compose(reg.get("sat_to_3sat").unwrap(), reg.get("subset_sum_to_knapsack").unwrap());
    assert!(matches!(err, Err(Error::KindMismatch { .. })));
}

#[test]
fn embedding_text_round_trips() {
    let r = Registry::catalog().get("3sat_to_dham_path").unwrap();
    let f = r.apply(&figure_formula()).unwrap().embedding;
    assert_eq!(f.to_string().parse::<Embedding>().unwrap(), f);
}

#[test]
fn non_injective_embedding_is_rejected() {
    let e = ElementId::Vertex(0);
    assert!(Embedding::new([(ElementId::Vertex(1), e), (ElementId::Vertex(2), e)]).is_err());
}

#[test]
fn every_catalog_reduction_preserves_solutions_on_random_sources() {
    let reg = Registry::catalog();
    let mut failed = Vec::new();
    for r in reg.iter() {
        let mut s = Sampler::new(11);
        for i in 0..8 {
            let x = s.source_for(r.as_ref());
            let (_, report) = verify_ssp(r.as_ref(), &x, DEFAULT_BUDGET)
                .unwrap_or_else(|e| panic!("{} on sample {i}: {e}", r.id()));
            if !report.passed() {
                failed.push(format!("{} on sample {i}: {:?}", r.id(), report.witness));
                break;
            }
        }
    }
    assert!(failed.is_empty(), "{failed:#?}");
}
