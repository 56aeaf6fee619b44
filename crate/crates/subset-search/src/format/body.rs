//! Kind-specific instance bodies.

use std::fmt::Write;

use super::lex::{Fields, Line};
use crate::catalog::{
    Cnf, Digraph, DigraphBound, DisjointPaths, FacilityLocation, FacilitySelection, Graph, GraphBound,
    HamiltonianPath, Knapsack, KnapsackItem, Partition, Payload, ProblemKind, Scheduling, SetSystem, Steiner,
    SubsetSum, Tsp,
};
use crate::element::Lit;
use crate::error::Result;

/// DIMACS body: `p cnf V C`, then clauses terminated by `0`; `c` lines are comments.
fn parse_cnf(lines: &[Line], context: usize) -> Result<Cnf> {
    let mut lines = lines.iter().filter(|l| l.keyword() != "c");
    let header = lines
        .next()
        .ok_or_else(|| super::lex::fail(context, 1, "missing `p cnf` line"))?;
    if header.keyword() != "p" || header.toks.get(1).map(|t| t.text) != Some("cnf") {
        return Err(header.err("expected `p cnf <vars> <clauses>`"));
    }
    header.expect_args(3)?;
    let num_vars: u32 = header.parse_at(2, "a variable count")?;
    let count: usize = header.parse_at(3, "a clause count")?;
    let mut clauses = Vec::new();
    let mut open: Vec<Lit> = Vec::new();
    let mut last = header;
    for l in lines {
        last = l;
        for i in 0..l.toks.len() {
            let code: i32 = l.parse_at(i, "a literal")?;
            if code == 0 {
                clauses.push(std::mem::take(&mut open));
                continue;
            }
            if code.unsigned_abs() > num_vars {
                return Err(super::lex::fail(l.no, l.toks[i].col, format!("literal {code} exceeds {num_vars} variables")));
            }
            open.push(Lit::from_dimacs(code).expect("nonzero"));
        }
    }
    if !open.is_empty() {
        return Err(last.err("last clause is not terminated by 0"));
    }
    if clauses.len() != count {
        return Err(header.err(format!("header announces {count} clauses, found {}", clauses.len())));
    }
    Ok(Cnf { num_vars, clauses })
}

fn write_cnf(cnf: &Cnf, out: &mut String) {
    let _ = writeln!(out, "p cnf {} {}", cnf.num_vars, cnf.clauses.len());
    for c in &cnf.clauses {
        for l in c {
            let _ = write!(out, "{} ", l.to_dimacs());
        }
        out.push_str("0\n");
    }
}

fn pair(l: &Line) -> Result<(u32, u32)> {
    l.expect_args(2)?;
    Ok((l.parse_at(1, "a vertex")?, l.parse_at(2, "a vertex")?))
}

fn weighted(l: &Line) -> Result<((u32, u32), i64)> {
    l.expect_args(3)?;
    Ok(((l.parse_at(1, "a vertex")?, l.parse_at(2, "a vertex")?), l.parse_at(3, "a weight")?))
}

fn graph(f: &Fields) -> Result<Graph> {
    let n = f.one("vertices")?.value()?;
    let edges = f.many("edge").map(pair).collect::<Result<Vec<_>>>()?;
    Ok(Graph::new(n, edges))
}

fn digraph(f: &Fields) -> Result<Digraph> {
    let n = f.one("vertices")?.value()?;
    let arcs = f.many("arc").map(pair).collect::<Result<Vec<_>>>()?;
    Ok(Digraph::new(n, arcs))
}

fn weighted_graph(f: &Fields) -> Result<(Graph, Vec<i64>)> {
    let n = f.one("vertices")?.value()?;
    let (edges, weights): (Vec<_>, Vec<_>) = f.many("edge").map(weighted).collect::<Result<Vec<_>>>()?.into_iter().unzip();
    Ok((Graph::new(n, edges), weights))
}

fn numbers(f: &Fields, keyword: &str) -> Result<Vec<i64>> {
    f.one(keyword)?.numbers()
}

fn rows(f: &Fields, keyword: &str) -> Result<Vec<Vec<i64>>> {
    f.many(keyword).map(|l| l.numbers()).collect()
}

pub(crate) fn parse(kind: ProblemKind, lines: &[Line], context: usize) -> Result<Payload> {
    use ProblemKind as K;
    if matches!(kind, K::Satisfiability | K::ThreeSatisfiability) {
        let cnf = parse_cnf(lines, context)?;
        return Ok(if kind == K::Satisfiability {
            Payload::Sat(cnf)
        } else {
            Payload::ThreeSat(cnf)
        });
    }
    let fields = |allowed: &[&str]| Fields::new(lines, context, allowed);
    Ok(match kind {
        K::VertexCover | K::IndependentSet | K::Clique | K::DominatingSet => {
            let f = fields(&["vertices", "edge", "k"])?;
            let g = GraphBound {
                graph: graph(&f)?,
                k: f.one("k")?.value()?,
            };
            match kind {
                K::VertexCover => Payload::VertexCover(g),
                K::IndependentSet => Payload::IndependentSet(g),
                K::Clique => Payload::Clique(g),
                _ => Payload::DominatingSet(g),
            }
        }
        K::FeedbackVertexSet | K::FeedbackArcSet => {
            let f = fields(&["vertices", "arc", "k"])?;
            let d = DigraphBound {
                digraph: digraph(&f)?,
                k: f.one("k")?.value()?,
            };
            if kind == K::FeedbackVertexSet {
                Payload::FeedbackVertexSet(d)
            } else {
                Payload::FeedbackArcSet(d)
            }
        }
        K::SetCover | K::HittingSet => {
            let f = fields(&["ground", "set", "k"])?;
            let s = SetSystem {
                ground: f.one("ground")?.value()?,
                sets: f.many("set").map(|l| l.numbers()).collect::<Result<_>>()?,
                k: f.one("k")?.value()?,
            };
            if kind == K::SetCover {
                Payload::SetCover(s)
            } else {
                Payload::HittingSet(s)
            }
        }
        K::UncapacitatedFacilityLocation => {
            let f = fields(&["clients", "facilities", "opening", "service", "k"])?;
            Payload::FacilityLocation(FacilityLocation {
                clients: f.one("clients")?.value()?,
                facilities: f.one("facilities")?.value()?,
                opening: numbers(&f, "opening")?,
                service: rows(&f, "service")?,
                k: f.one("k")?.value()?,
            })
        }
        K::PCenter | K::PMedian => {
            let f = fields(&["clients", "facilities", "service", "p", "k"])?;
            let sel = FacilitySelection {
                clients: f.one("clients")?.value()?,
                facilities: f.one("facilities")?.value()?,
                service: rows(&f, "service")?,
                p: f.one("p")?.value()?,
                k: f.one("k")?.value()?,
            };
            if kind == K::PCenter {
                Payload::PCenter(sel)
            } else {
                Payload::PMedian(sel)
            }
        }
        K::SubsetSum => {
            let f = fields(&["values", "target"])?;
            Payload::SubsetSum(SubsetSum {
                values: numbers(&f, "values")?,
                target: f.one("target")?.value()?,
            })
        }
        K::Knapsack => {
            let f = fields(&["item", "capacity", "min_profit"])?;
            let items = f
                .many("item")
                .map(|l| {
                    l.expect_args(2)?;
                    Ok(KnapsackItem {
                        profit: l.parse_at(1, "a profit")?,
                        weight: l.parse_at(2, "a weight")?,
                    })
                })
                .collect::<Result<_>>()?;
            Payload::Knapsack(Knapsack {
                items,
                capacity: f.one("capacity")?.value()?,
                min_profit: f.one("min_profit")?.value()?,
            })
        }
        K::Partition => {
            let f = fields(&["values"])?;
            Payload::Partition(Partition {
                values: numbers(&f, "values")?,
            })
        }
        K::TwoMachineScheduling => {
            let f = fields(&["times", "deadline"])?;
            Payload::TwoMachineScheduling(Scheduling {
                times: numbers(&f, "times")?,
                deadline: f.one("deadline")?.value()?,
            })
        }
        K::DirectedHamiltonianPath => {
            let f = fields(&["vertices", "arc", "source", "sink"])?;
            Payload::HamiltonianPath(HamiltonianPath {
                digraph: digraph(&f)?,
                source: f.one("source")?.value()?,
                sink: f.one("sink")?.value()?,
            })
        }
        K::DirectedHamiltonianCycle => {
            let f = fields(&["vertices", "arc"])?;
            Payload::HamiltonianCycle(digraph(&f)?)
        }
        K::UndirectedHamiltonianCycle => {
            let f = fields(&["vertices", "edge"])?;
            Payload::UndirectedHamiltonianCycle(graph(&f)?)
        }
        K::TravelingSalesman => {
            let f = fields(&["vertices", "edge", "k"])?;
            let (graph, weights) = weighted_graph(&f)?;
            Payload::Tsp(Tsp {
                graph,
                weights,
                k: f.one("k")?.value()?,
            })
        }
        K::DirectedTwoDisjointPath | K::DirectedKDisjointPath => {
            let f = fields(&["vertices", "arc", "pair"])?;
            let d = DisjointPaths {
                digraph: digraph(&f)?,
                pairs: f.many("pair").map(pair).collect::<Result<_>>()?,
            };
            if kind == K::DirectedTwoDisjointPath {
                Payload::TwoDisjointPaths(d)
            } else {
                Payload::KDisjointPaths(d)
            }
        }
        K::SteinerTree => {
            let f = fields(&["vertices", "edge", "terminals", "k"])?;
            let (graph, weights) = weighted_graph(&f)?;
            Payload::SteinerTree(Steiner {
                graph,
                weights,
                terminals: f.one("terminals")?.numbers()?,
                k: f.one("k")?.value()?,
            })
        }
        K::Satisfiability | K::ThreeSatisfiability => unreachable!("handled above"),
    })
}

fn list<T: std::fmt::Display>(out: &mut String, keyword: &str, values: &[T]) {
    out.push_str(keyword);
    for v in values {
        let _ = write!(out, " {v}");
    }
    out.push('\n');
}

fn write_graph(out: &mut String, g: &Graph) {
    let _ = writeln!(out, "vertices {}", g.n);
    for (a, b) in &g.edges {
        let _ = writeln!(out, "edge {a} {b}");
    }
}

fn write_digraph(out: &mut String, d: &Digraph) {
    let _ = writeln!(out, "vertices {}", d.n);
    for (a, b) in &d.arcs {
        let _ = writeln!(out, "arc {a} {b}");
    }
}

fn write_weighted(out: &mut String, g: &Graph, weights: &[i64]) {
    let _ = writeln!(out, "vertices {}", g.n);
    for ((a, b), w) in g.edges.iter().zip(weights) {
        let _ = writeln!(out, "edge {a} {b} {w}");
    }
}

pub(crate) fn write(payload: &Payload, out: &mut String) {
    match payload {
        Payload::Sat(c) | Payload::ThreeSat(c) => write_cnf(c, out),
        Payload::VertexCover(g) | Payload::IndependentSet(g) | Payload::Clique(g) | Payload::DominatingSet(g) => {
            write_graph(out, &g.graph);
            let _ = writeln!(out, "k {}", g.k);
        }
        Payload::FeedbackVertexSet(d) | Payload::FeedbackArcSet(d) => {
            write_digraph(out, &d.digraph);
            let _ = writeln!(out, "k {}", d.k);
        }
        Payload::SetCover(s) | Payload::HittingSet(s) => {
            let _ = writeln!(out, "ground {}", s.ground);
            for set in &s.sets {
                list(out, "set", set);
            }
            let _ = writeln!(out, "k {}", s.k);
        }
        Payload::FacilityLocation(f) => {
            let _ = writeln!(out, "clients {}\nfacilities {}", f.clients, f.facilities);
            list(out, "opening", &f.opening);
            for row in &f.service {
                list(out, "service", row);
            }
            let _ = writeln!(out, "k {}", f.k);
        }
        Payload::PCenter(f) | Payload::PMedian(f) => {
            let _ = writeln!(out, "clients {}\nfacilities {}", f.clients, f.facilities);
            for row in &f.service {
                list(out, "service", row);
            }
            let _ = writeln!(out, "p {}\nk {}", f.p, f.k);
        }
        Payload::SubsetSum(s) => {
            list(out, "values", &s.values);
            let _ = writeln!(out, "target {}", s.target);
        }
        Payload::Knapsack(k) => {
            for item in &k.items {
                let _ = writeln!(out, "item {} {}", item.profit, item.weight);
            }
            let _ = writeln!(out, "capacity {}\nmin_profit {}", k.capacity, k.min_profit);
        }
        Payload::Partition(p) => list(out, "values", &p.values),
        Payload::TwoMachineScheduling(s) => {
            list(out, "times", &s.times);
            let _ = writeln!(out, "deadline {}", s.deadline);
        }
        Payload::HamiltonianPath(h) => {
            write_digraph(out, &h.digraph);
            let _ = writeln!(out, "source {}\nsink {}", h.source, h.sink);
        }
        Payload::HamiltonianCycle(d) => write_digraph(out, d),
        Payload::UndirectedHamiltonianCycle(g) => write_graph(out, g),
        Payload::Tsp(t) => {
            write_weighted(out, &t.graph, &t.weights);
            let _ = writeln!(out, "k {}", t.k);
        }
        Payload::TwoDisjointPaths(d) | Payload::KDisjointPaths(d) => {
            write_digraph(out, &d.digraph);
            for (s, t) in &d.pairs {
                let _ = writeln!(out, "pair {s} {t}");
            }
        }
        Payload::SteinerTree(s) => {
            write_weighted(out, &s.graph, &s.weights);
            list(out, "terminals", &s.terminals);
            let _ = writeln!(out, "k {}", s.k);
        }
    }
}
