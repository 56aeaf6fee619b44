use crate::catalog::{
    Digraph, DigraphBound, FacilityLocation, FacilitySelection, Graph, GraphBound, Instance, Payload, SetSystem,
};
use crate::element::ElementId;
use crate::error::{Error, Result};

type Built = (Payload, Vec<(ElementId, ElementId)>);

fn graph_of(x: &Instance) -> &GraphBound {
    match x.payload() {
        Payload::VertexCover(g) | Payload::IndependentSet(g) => g,
        other => unreachable!("kind checked before construction, got {}", other.kind()),
    }
}

fn vertices_to(n: u32, target: fn(u32) -> ElementId) -> Vec<(ElementId, ElementId)> {
    (0..n).map(|v| (ElementId::Vertex(v), target(v))).collect()
}

fn checked(value: Option<u32>, what: &str) -> Result<u32> {
    value.ok_or_else(|| Error::ConstructionOverflow(what.into()))
}

/// Each edge gets `|V|+1` private apex vertices adjacent to both ends.
pub(super) fn to_dominating_set(x: &Instance) -> Result<Built> {
    let GraphBound { graph, k } = graph_of(x);
    let n = graph.n;
    if let Some(v) = (0..n).find(|&v| graph.degree(v) == 0) {
        return Err(Error::Precondition(format!("vertex {v} is isolated")));
    }
    let copies = checked(n.checked_add(1), "apex count")?;
    let apexes = checked((graph.edges.len() as u32).checked_mul(copies), "apex count")?;
    let total = checked(n.checked_add(apexes), "vertex count")?;
    let mut edges = graph.edges.clone();
    for (j, &(u, v)) in graph.edges.iter().enumerate() {
        for r in 0..copies {
            let apex = n + j as u32 * copies + r;
            edges.push((u, apex));
            edges.push((v, apex));
        }
    }
    let target = GraphBound {
        graph: Graph::new(total, edges),
        k: (*k).min(n as i64),
    };
    Ok((Payload::DominatingSet(target), vertices_to(n, ElementId::Vertex)))
}

pub(super) fn to_set_cover(x: &Instance) -> Result<Built> {
    let GraphBound { graph, k } = graph_of(x);
    let sets = (0..graph.n)
        .map(|v| {
            (0..graph.edges.len() as u32)
                .filter(|&j| {
                    let (a, b) = graph.edges[j as usize];
                    a == v || b == v
                })
                .collect()
        })
        .collect();
    let target = SetSystem {
        ground: graph.edges.len() as u32,
        sets,
        k: *k,
    };
    Ok((Payload::SetCover(target), vertices_to(graph.n, ElementId::Set)))
}

pub(super) fn to_hitting_set(x: &Instance) -> Result<Built> {
    let GraphBound { graph, k } = graph_of(x);
    let target = SetSystem {
        ground: graph.n,
        sets: graph.edges.iter().map(|&(a, b)| vec![a, b]).collect(),
        k: *k,
    };
    Ok((Payload::HittingSet(target), vertices_to(graph.n, ElementId::Number)))
}

/// Every edge becomes a directed 2-cycle.
pub(super) fn to_feedback_vertex_set(x: &Instance) -> Result<Built> {
    let GraphBound { graph, k } = graph_of(x);
    let arcs = graph.edges.iter().flat_map(|&(a, b)| [(a, b), (b, a)]);
    let target = DigraphBound {
        digraph: Digraph::new(graph.n, arcs),
        k: *k,
    };
    Ok((Payload::FeedbackVertexSet(target), vertices_to(graph.n, ElementId::Vertex)))
}

/// Vertex `v` splits into `2v → 2v+1`; each edge `{v,w}` adds `|V|+1`
/// subdivided paths `2v+1 → · → 2w` and as many `2w+1 → · → 2v`.
pub(super) fn to_feedback_arc_set(x: &Instance) -> Result<Built> {
    let GraphBound { graph, k } = graph_of(x);
    let n = graph.n;
    let copies = checked(n.checked_add(1), "path count")?;
    let per_edge = checked(copies.checked_mul(2), "path count")?;
    let split = checked(n.checked_mul(2), "vertex count")?;
    let total = checked(
        (graph.edges.len() as u32).checked_mul(per_edge).and_then(|t| t.checked_add(split)),
        "vertex count",
    )?;
    let mut arcs: Vec<(u32, u32)> = (0..n).map(|v| (2 * v, 2 * v + 1)).collect();
    for (j, &(v, w)) in graph.edges.iter().enumerate() {
        for r in 0..copies {
            let a = split + j as u32 * per_edge + 2 * r;
            let b = a + 1;
            arcs.extend([(2 * v + 1, a), (a, 2 * w), (2 * w + 1, b), (b, 2 * v)]);
        }
    }
    let target = DigraphBound {
        digraph: Digraph::new(total, arcs),
        k: (*k).min(n as i64),
    };
    let pairs = (0..n).map(|v| (ElementId::Vertex(v), ElementId::Arc(2 * v, 2 * v + 1))).collect();
    Ok((Payload::FeedbackArcSet(target), pairs))
}

/// Clients are edges; serving from an endpoint is free, otherwise `|V|+1`.
fn incidence_costs(graph: &Graph) -> Vec<Vec<i64>> {
    let far = graph.n as i64 + 1;
    graph
        .edges
        .iter()
        .map(|&(a, b)| (0..graph.n).map(|v| if v == a || v == b { 0 } else { far }).collect())
        .collect()
}

pub(super) fn to_facility_location(x: &Instance) -> Result<Built> {
    let GraphBound { graph, k } = graph_of(x);
    let target = FacilityLocation {
        clients: graph.edges.len() as u32,
        facilities: graph.n,
        opening: vec![1; graph.n as usize],
        service: incidence_costs(graph),
        k: (*k).min(graph.n as i64),
    };
    Ok((Payload::FacilityLocation(target), vertices_to(graph.n, ElementId::Facility)))
}

fn selection(graph: &Graph, k: i64) -> FacilitySelection {
    FacilitySelection {
        clients: graph.edges.len() as u32,
        facilities: graph.n,
        service: incidence_costs(graph),
        p: k,
        k: 0,
    }
}

pub(super) fn to_p_center(x: &Instance) -> Result<Built> {
    let g = graph_of(x);
    Ok((Payload::PCenter(selection(&g.graph, g.k)), vertices_to(g.graph.n, ElementId::Facility)))
}

pub(super) fn to_p_median(x: &Instance) -> Result<Built> {
    let g = graph_of(x);
    Ok((Payload::PMedian(selection(&g.graph, g.k)), vertices_to(g.graph.n, ElementId::Facility)))
}

pub(super) fn independent_set_to_clique(x: &Instance) -> Result<Built> {
    let GraphBound { graph, k } = graph_of(x);
    let target = GraphBound {
        graph: graph.complement(),
        k: *k,
    };
    Ok((Payload::Clique(target), vertices_to(graph.n, ElementId::Vertex)))
}
