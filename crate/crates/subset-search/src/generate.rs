//! Seeded random instances, sized so that every enumeration stays complete.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::catalog::{
    Cnf, Digraph, DigraphBound, DisjointPaths, FacilityLocation, FacilitySelection, Graph, GraphBound,
    HamiltonianPath, Instance, Knapsack, KnapsackItem, Partition, Payload, ProblemKind, Scheduling, SetSystem,
    Steiner, SubsetSum, Tsp,
};
use crate::element::{ElementId, Lit, Subset};
use crate::game::qbf::{MatrixForm, QuantifiedFormula};
use crate::reduction::Reduction;
use crate::variant::{CombInterdictionInstance, CombTwoStageInstance, RegretInstance, RestrictedRegretInstance};

/// Seed used when none is given on the command line.
pub const DEFAULT_SEED: u64 = 0x5eed_2024;

/// Smallest vertex cover size, by brute force over vertex masks.
pub fn vertex_cover_number(g: &Graph) -> u32 {
    (0u32..1 << g.n)
        .filter(|mask| g.edges.iter().all(|&(a, b)| mask >> a & 1 == 1 || mask >> b & 1 == 1))
        .map(u32::count_ones)
        .min()
        .unwrap_or(0)
}

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Sampler {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn coin(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    pub fn below(&mut self, n: u32) -> u32 {
        self.rng.gen_range(0..n)
    }

    pub fn between(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    /// A clause of `width` distinct literals over `1..=vars`.
    pub fn clause(&mut self, vars: u32, width: usize) -> Vec<Lit> {
        let mut pool: Vec<Lit> = (1..=vars).flat_map(|v| [Lit::pos(v), Lit::neg(v)]).collect();
        pool.shuffle(&mut self.rng);
        pool.truncate(width);
        pool
    }

    pub fn cnf(&mut self, vars: u32, clauses: usize, widths: std::ops::RangeInclusive<usize>) -> Cnf {
        let clauses = (0..clauses)
            .map(|_| {
                let w = self.rng.gen_range(widths.clone()).min(2 * vars as usize);
                self.clause(vars, w)
            })
            .collect();
        Cnf { num_vars: vars, clauses }
    }

    /// SAT with ≤ 3 variables and ≤ 3 clauses of width 0..=4.
    pub fn sat(&mut self) -> Instance {
        let vars = self.rng.gen_range(1..=3);
        let m = self.rng.gen_range(0..=3);
        let mut cnf = self.cnf(vars, m, 1..=4);
        if self.coin(0.1) && !cnf.clauses.is_empty() {
            cnf.clauses[0].clear();
        }
        Instance::new(Payload::Sat(cnf)).expect("generated SAT is valid")
    }

    /// 3SAT with 2..=`max_vars` variables and 1..=`max_clauses` clauses.
    pub fn three_sat(&mut self, max_vars: u32, max_clauses: usize) -> Instance {
        let vars = self.rng.gen_range(2..=max_vars.max(2));
        let m = self.rng.gen_range(1..=max_clauses.max(1));
        Instance::new(Payload::ThreeSat(self.cnf(vars, m, 3..=3))).expect("generated 3SAT is valid")
    }

    pub fn graph(&mut self, n: u32, density: f64) -> Graph {
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if self.coin(density) {
                    edges.push((a, b));
                }
            }
        }
        Graph::new(n, edges)
    }

    /// A graph in which every vertex has at least one neighbour (`n ≥ 2`).
    pub fn graph_without_isolated(&mut self, n: u32, density: f64) -> Graph {
        let mut g = self.graph(n, density);
        for v in 0..n {
            if g.degree(v) == 0 {
                let mut w = self.below(n - 1);
                if w >= v {
                    w += 1;
                }
                g.edges.push((v.min(w), v.max(w)));
            }
        }
        g.edges.sort_unstable();
        g
    }

    pub fn digraph(&mut self, n: u32, density: f64, allowed: impl Fn(u32, u32) -> bool) -> Digraph {
        let mut arcs = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b && allowed(a, b) && self.coin(density) {
                    arcs.push((a, b));
                }
            }
        }
        Digraph::new(n, arcs)
    }

    /// Bound chosen from `{best-1, best, best+1}` clamped to `0..=n`.
    fn bound_near(&mut self, best: u32, n: u32) -> i64 {
        (best as i64 + self.between(-1, 1)).clamp(0, n as i64)
    }

    pub fn vertex_cover(&mut self, max_n: u32, no_isolated: bool) -> Instance {
        let n = self.rng.gen_range(2..=max_n.max(2));
        let density = self.rng.gen_range(0.2..0.7);
        let graph = if no_isolated {
            self.graph_without_isolated(n, density)
        } else {
            self.graph(n, density)
        };
        let k = self.bound_near(vertex_cover_number(&graph), n);
        Instance::new(Payload::VertexCover(GraphBound { graph, k })).expect("valid")
    }

    pub fn independent_set(&mut self, max_n: u32) -> Instance {
        let n = self.rng.gen_range(1..=max_n.max(1));
        let density = self.rng.gen_range(0.2..0.7);
        let graph = self.graph(n, density);
        let alpha = n - vertex_cover_number(&graph);
        let k = self.bound_near(alpha, n);
        Instance::new(Payload::IndependentSet(GraphBound { graph, k })).expect("valid")
    }

    fn numbers(&mut self, count: usize, max: i64) -> Vec<i64> {
        (0..count).map(|_| self.between(0, max)).collect()
    }

    /// Target is the sum of a random subset half the time.
    pub fn subset_sum(&mut self, max_len: usize, max_value: i64) -> Instance {
        let len = self.rng.gen_range(1..=max_len.max(1));
        let values = self.numbers(len, max_value);
        let target = if self.coin(0.5) {
            values.iter().filter(|_| self.rng.gen_bool(0.5)).sum()
        } else {
            self.between(0, values.iter().sum::<i64>() + 2)
        };
        Instance::new(Payload::SubsetSum(SubsetSum { values, target })).expect("valid")
    }

    pub fn partition(&mut self, max_len: usize, max_value: i64) -> Instance {
        let len = self.rng.gen_range(1..=max_len.max(1));
        let mut values = self.numbers(len, max_value);
        if self.coin(0.5) {
            let total: i64 = values.iter().sum();
            if total % 2 == 1 {
                values[0] += 1;
            }
        }
        Instance::new(Payload::Partition(Partition { values })).expect("valid")
    }

    /// Random arcs plus, half the time, a planted Hamiltonian path from
    /// vertex 0 to vertex `n-1`. With `closed_ends` the source has no
    /// in-arcs and the sink no out-arcs.
    pub fn hamiltonian_path(&mut self, max_n: u32, closed_ends: bool) -> Instance {
        let n = self.rng.gen_range(2..=max_n.max(2));
        let (s, t) = (0, n - 1);
        let allowed = move |a: u32, b: u32| !closed_ends || (b != s && a != t);
        let mut d = self.digraph(n, 0.3, allowed);
        if self.coin(0.5) {
            let mut middle: Vec<u32> = (1..n - 1).collect();
            middle.shuffle(&mut self.rng);
            let order: Vec<u32> = std::iter::once(s).chain(middle).chain(std::iter::once(t)).collect();
            for w in order.windows(2) {
                if !d.arcs.contains(&(w[0], w[1])) {
                    d.arcs.push((w[0], w[1]));
                }
            }
        }
        let payload = Payload::HamiltonianPath(HamiltonianPath {
            digraph: d,
            source: s,
            sink: t,
        });
        Instance::new(payload).expect("valid")
    }

    fn plant_cycle(&mut self, n: u32, arcs: &mut Vec<(u32, u32)>, directed: bool) {
        let mut order: Vec<u32> = (0..n).collect();
        order.shuffle(&mut self.rng);
        for i in 0..n as usize {
            let (a, b) = (order[i], order[(i + 1) % n as usize]);
            let arc = if directed { (a, b) } else { (a.min(b), a.max(b)) };
            if !arcs.contains(&arc) {
                arcs.push(arc);
            }
        }
    }

    pub fn directed_cycle(&mut self, max_n: u32) -> Instance {
        let n = self.rng.gen_range(2..=max_n.max(2));
        let mut d = self.digraph(n, 0.3, |_, _| true);
        if self.coin(0.5) {
            self.plant_cycle(n, &mut d.arcs, true);
        }
        Instance::new(Payload::HamiltonianCycle(d)).expect("valid")
    }

    pub fn undirected_cycle(&mut self, max_n: u32) -> Instance {
        let n = self.rng.gen_range(3..=max_n.max(3));
        let mut g = self.graph(n, 0.4);
        if self.coin(0.5) {
            self.plant_cycle(n, &mut g.edges, false);
            g.edges.sort_unstable();
        }
        Instance::new(Payload::UndirectedHamiltonianCycle(g)).expect("valid")
    }

    /// Pairs `(0,1), (2,3), ...` on a random digraph over `n` vertices.
    pub fn disjoint_paths(&mut self, max_n: u32, pairs: u32) -> Instance {
        let n = self.rng.gen_range((2 * pairs).max(4)..=max_n.max(2 * pairs));
        let d = self.digraph(n, 0.3, |_, _| true);
        let pairs: Vec<(u32, u32)> = (0..pairs).map(|i| (2 * i, 2 * i + 1)).collect();
        let payload = DisjointPaths { digraph: d, pairs };
        let payload = if payload.pairs.len() == 2 {
            Payload::TwoDisjointPaths(payload)
        } else {
            Payload::KDisjointPaths(payload)
        };
        Instance::new(payload).expect("valid")
    }

    /// A source instance for `reduction`, within the caps that keep both
    /// sides of its verification enumerable.
    pub fn source_for(&mut self, reduction: &dyn Reduction) -> Instance {
        let id = reduction.id();
        let first = id.split(',').next().unwrap_or("");
        match reduction.source() {
            ProblemKind::Satisfiability => self.sat(),
            ProblemKind::ThreeSatisfiability => self.three_sat(3, 3),
            ProblemKind::VertexCover => {
                let small = first == "vertex_cover_to_feedback_arc_set";
                let no_isolated = first == "vertex_cover_to_dominating_set";
                self.vertex_cover(if small { 5 } else { 6 }, no_isolated)
            }
            ProblemKind::IndependentSet => self.independent_set(6),
            ProblemKind::SubsetSum => self.subset_sum(6, 12),
            ProblemKind::Partition => self.partition(7, 10),
            ProblemKind::DirectedHamiltonianPath => self.hamiltonian_path(6, first == "dham_path_to_dham_cycle"),
            ProblemKind::DirectedHamiltonianCycle => self.directed_cycle(5),
            ProblemKind::UndirectedHamiltonianCycle => self.undirected_cycle(6),
            ProblemKind::DirectedTwoDisjointPath => self.disjoint_paths(6, 2),
            other => self.instance(other),
        }
    }

    /// A small instance of `kind` with at most 12 universe elements.
    pub fn instance(&mut self, kind: ProblemKind) -> Instance {
        use ProblemKind as K;
        let payload = match kind {
            K::Satisfiability => {
                let vars = self.rng.gen_range(1..=5);
                let m = self.rng.gen_range(0..=5);
                Payload::Sat(self.cnf(vars, m, 0..=4))
            }
            K::ThreeSatisfiability => {
                let vars = self.rng.gen_range(2..=5);
                let m = self.rng.gen_range(0..=6);
                Payload::ThreeSat(self.cnf(vars, m, 3..=3))
            }
            K::VertexCover | K::IndependentSet | K::Clique | K::DominatingSet => {
                let n = self.rng.gen_range(1..=8);
                let density = self.rng.gen_range(0.1..0.8);
                let graph = self.graph(n, density);
                let k = self.between(0, n as i64);
                let g = GraphBound { graph, k };
                match kind {
                    K::VertexCover => Payload::VertexCover(g),
                    K::IndependentSet => Payload::IndependentSet(g),
                    K::Clique => Payload::Clique(g),
                    _ => Payload::DominatingSet(g),
                }
            }
            K::SetCover | K::HittingSet => {
                let (count, ground) = if kind == K::SetCover {
                    (self.rng.gen_range(1..=8), self.rng.gen_range(0..=5))
                } else {
                    (self.rng.gen_range(0..=5), self.rng.gen_range(1..=8))
                };
                let sets = (0..count)
                    .map(|_| (0..ground).filter(|_| self.rng.gen_bool(0.4)).collect())
                    .collect();
                let k = self.between(0, 4);
                let s = SetSystem { ground, sets, k };
                if kind == K::SetCover {
                    Payload::SetCover(s)
                } else {
                    Payload::HittingSet(s)
                }
            }
            K::FeedbackVertexSet => {
                let n = self.rng.gen_range(1..=7);
                let digraph = self.digraph(n, 0.3, |_, _| true);
                Payload::FeedbackVertexSet(DigraphBound {
                    digraph,
                    k: self.between(0, 3),
                })
            }
            K::FeedbackArcSet => {
                let n = self.rng.gen_range(2..=5);
                let mut digraph = self.digraph(n, 0.35, |_, _| true);
                digraph.arcs.truncate(11);
                Payload::FeedbackArcSet(DigraphBound {
                    digraph,
                    k: self.between(0, 4),
                })
            }
            K::UncapacitatedFacilityLocation | K::PCenter | K::PMedian => {
                let facilities = self.rng.gen_range(1..=6);
                let clients = self.rng.gen_range(0..=4);
                let service = (0..clients)
                    .map(|_| (0..facilities).map(|_| self.between(0, 5)).collect())
                    .collect();
                match kind {
                    K::UncapacitatedFacilityLocation => Payload::FacilityLocation(FacilityLocation {
                        clients,
                        facilities,
                        opening: (0..facilities).map(|_| self.between(0, 4)).collect(),
                        service,
                        k: self.between(0, 12),
                    }),
                    _ => {
                        let sel = FacilitySelection {
                            clients,
                            facilities,
                            service,
                            p: self.between(0, 3),
                            k: self.between(0, 8),
                        };
                        if kind == K::PCenter {
                            Payload::PCenter(sel)
                        } else {
                            Payload::PMedian(sel)
                        }
                    }
                }
            }
            K::SubsetSum => return self.subset_sum(8, 10),
            K::Partition => return self.partition(8, 10),
            K::TwoMachineScheduling => {
                let len = self.rng.gen_range(1..=8);
                let times = self.numbers(len, 9);
                let total: i64 = times.iter().sum();
                let deadline = self.between(total / 3, total);
                Payload::TwoMachineScheduling(Scheduling { times, deadline })
            }
            K::Knapsack => {
                let len = self.rng.gen_range(0..=8);
                let items = (0..len)
                    .map(|_| KnapsackItem {
                        profit: self.between(0, 9),
                        weight: self.between(0, 9),
                    })
                    .collect();
                Payload::Knapsack(Knapsack {
                    items,
                    capacity: self.between(0, 20),
                    min_profit: self.between(0, 20),
                })
            }
            K::DirectedHamiltonianPath => {
                let n = self.rng.gen_range(2..=5);
                let mut digraph = self.digraph(n, 0.45, |_, _| true);
                digraph.arcs.truncate(12);
                let source = self.below(n);
                let sink = (source + 1 + self.below(n - 1)) % n;
                Payload::HamiltonianPath(HamiltonianPath { digraph, source, sink })
            }
            K::DirectedHamiltonianCycle => {
                let n = self.rng.gen_range(2..=5);
                let mut digraph = self.digraph(n, 0.45, |_, _| true);
                digraph.arcs.truncate(12);
                Payload::HamiltonianCycle(digraph)
            }
            K::UndirectedHamiltonianCycle => {
                let n = self.rng.gen_range(3..=5);
                Payload::UndirectedHamiltonianCycle(self.graph(n, 0.7))
            }
            K::TravelingSalesman => {
                let n = self.rng.gen_range(3..=5);
                let graph = self.graph(n, 1.0);
                let weights = graph.edges.iter().map(|_| self.between(0, 5)).collect();
                Payload::Tsp(Tsp {
                    graph,
                    weights,
                    k: self.between(0, 15),
                })
            }
            K::DirectedTwoDisjointPath | K::DirectedKDisjointPath => {
                let pairs = if kind == K::DirectedTwoDisjointPath {
                    2
                } else {
                    self.rng.gen_range(1..=3)
                };
                let n = self.rng.gen_range((2 * pairs).max(4)..=7);
                let mut digraph = self.digraph(n, 0.3, |_, _| true);
                digraph.arcs.truncate(12);
                let pairs = (0..pairs).map(|i| (2 * i, 2 * i + 1)).collect();
                let d = DisjointPaths { digraph, pairs };
                if kind == K::DirectedTwoDisjointPath {
                    Payload::TwoDisjointPaths(d)
                } else {
                    Payload::KDisjointPaths(d)
                }
            }
            K::SteinerTree => {
                let n = self.rng.gen_range(2..=6);
                let mut graph = self.graph(n, 0.5);
                graph.edges.truncate(11);
                let weights = graph.edges.iter().map(|_| self.between(1, 3)).collect();
                let mut vertices: Vec<u32> = (0..n).collect();
                vertices.shuffle(&mut self.rng);
                let count = self.rng.gen_range(1..=3.min(n as usize));
                let mut terminals = vertices[..count].to_vec();
                terminals.sort_unstable();
                Payload::SteinerTree(Steiner {
                    graph,
                    weights,
                    terminals,
                    k: self.between(0, 10),
                })
            }
        };
        Instance::new(payload).expect("generated instance is valid")
    }
}

/// Quantified formulas and variant instances.
impl Sampler {
    fn term(&mut self, vars: u32, max_width: usize) -> Vec<Lit> {
        let width = self.rng.gen_range(1..=max_width.min(vars as usize).max(1));
        self.clause(vars, width)
    }

    fn blocks(&mut self, sizes: &[u32]) -> Vec<Vec<u32>> {
        let mut next = 1;
        sizes
            .iter()
            .map(|&k| {
                let b = (next..next + k).collect();
                next += k;
                b
            })
            .collect()
    }

    /// `∃X ∀Y` DNF with `1..=max_x` and `1..=max_y` variables and
    /// `1..=max_terms` terms of width at most 3.
    pub fn exists_forall_dnf(&mut self, max_x: u32, max_y: u32, max_terms: usize) -> QuantifiedFormula {
        let sizes = [self.rng.gen_range(1..=max_x), self.rng.gen_range(1..=max_y)];
        let vars = sizes.iter().sum();
        let blocks = self.blocks(&sizes);
        let count = self.rng.gen_range(1..=max_terms);
        let terms = (0..count).map(|_| self.term(vars, 3)).collect();
        QuantifiedFormula::new(vars, blocks, MatrixForm::Dnf, terms).expect("generated formula is valid")
    }

    /// `∃X ∀Y ∃Z` CNF with at most `max` variables per block and up to five
    /// clauses of width at most 3.
    pub fn exists_forall_exists_cnf(&mut self, max: u32) -> QuantifiedFormula {
        let sizes = [
            self.rng.gen_range(1..=max),
            self.rng.gen_range(1..=max),
            self.rng.gen_range(1..=max),
        ];
        let vars = sizes.iter().sum();
        let blocks = self.blocks(&sizes);
        let count = self.rng.gen_range(1..=5);
        let clauses = (0..count).map(|_| self.term(vars, 3)).collect();
        QuantifiedFormula::new(vars, blocks, MatrixForm::Cnf, clauses).expect("generated formula is valid")
    }

    /// Two or three blocks, either matrix form, at most 9 variables.
    pub fn quantified(&mut self) -> QuantifiedFormula {
        let three = self.coin(0.5);
        let sizes: Vec<u32> = (0..if three { 3 } else { 2 }).map(|_| self.rng.gen_range(0..=3)).collect();
        let vars: u32 = sizes.iter().sum();
        let blocks = self.blocks(&sizes);
        let form = if self.coin(0.5) { MatrixForm::Cnf } else { MatrixForm::Dnf };
        let count = self.rng.gen_range(0..=6);
        let matrix = if vars == 0 {
            Vec::new()
        } else {
            (0..count).map(|_| self.term(vars, 3)).collect()
        };
        QuantifiedFormula::new(vars, blocks, form, matrix).expect("generated formula is valid")
    }

    fn part_of(&mut self, pool: &[ElementId], p: f64) -> Subset {
        Subset::new(pool.iter().copied().filter(|_| self.rng.gen_bool(p)))
    }

    pub fn comb_interdiction(&mut self, base: Instance) -> CombInterdictionInstance {
        let pool = base.universe().as_slice().to_vec();
        let blockable = self.part_of(&pool, 0.4);
        let t = self.between(0, blockable.len() as i64);
        CombInterdictionInstance::new(base, blockable, t).expect("generated variant is valid")
    }

    /// 0/1 bounds with `lower ≤ upper`, `q ∈ 0..=2`.
    pub fn restricted_regret(&mut self, base: Instance) -> RestrictedRegretInstance {
        let n = base.universe().len();
        let upper: Vec<i64> = (0..n).map(|_| self.coin(0.5) as i64).collect();
        let lower = upper.iter().map(|&u| (u == 1 && self.coin(0.3)) as i64).collect();
        let q = self.between(0, 2);
        RestrictedRegretInstance::new(base, lower, upper, q).expect("generated variant is valid")
    }

    /// Integer intervals inside `0..=max` over an LOP base.
    pub fn regret(&mut self, base: Instance, max: i64) -> RegretInstance {
        let n = base.universe().len();
        let lower: Vec<i64> = (0..n).map(|_| self.between(0, max)).collect();
        let upper = lower.iter().map(|&l| self.between(l, max)).collect();
        let t = self.between(0, max);
        RegretInstance::new(base, lower, upper, t).expect("generated variant is valid")
    }

    pub fn comb_two_stage(&mut self, base: Instance) -> CombTwoStageInstance {
        let pool = base.universe().as_slice().to_vec();
        let first_stage = self.part_of(&pool, 0.35);
        let rest: Vec<ElementId> = pool.into_iter().filter(|e| !first_stage.contains(e)).collect();
        let blockable = self.part_of(&rest, 0.4);
        let gamma = self.between(0, blockable.len().min(3) as i64);
        CombTwoStageInstance::new(base, first_stage, blockable, gamma).expect("generated variant is valid")
    }

    /// A vertex cover instance whose bound is the cover number, so that its
    /// solutions are exactly the cheapest covers.
    pub fn tight_vertex_cover(&mut self, max_n: u32) -> Instance {
        let n = self.rng.gen_range(2..=max_n.max(2));
        let density = self.rng.gen_range(0.2..0.7);
        let graph = self.graph(n, density);
        let k = vertex_cover_number(&graph) as i64;
        Instance::new(Payload::VertexCover(GraphBound { graph, k })).expect("valid")
    }

    /// A satisfiable 3SAT instance within the usual caps.
    pub fn satisfiable_three_sat(&mut self) -> Instance {
        loop {
            let x = self.three_sat(3, 3);
            if !x.enumerate_solutions(crate::DEFAULT_BUDGET).is_empty() {
                return x;
            }
        }
    }
}
