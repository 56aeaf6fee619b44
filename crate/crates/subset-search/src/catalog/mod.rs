//! The problem catalog: payloads, validation and solution predicates for
//! every supported problem kind.

mod covering;
mod disjoint;
mod facility;
mod feedback;
mod graph_kinds;
mod hamilton;
mod numbers;
mod sat;
mod steiner;
pub mod structures;

use std::fmt;
use std::str::FromStr;

use crate::element::{ElementId, Lit, Subset, Universe};
use crate::error::{Diagnostics, Error, Result};
use crate::family::SolutionFamily;
use crate::search::{self, Search, Step};
use crate::ssp::Ssp;

pub use structures::{Digraph, Graph};

/// What the universe of a kind consists of.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UniverseRole {
    Literals,
    Vertices,
    Edges,
    Arcs,
    Numbers,
    Objects,
    Jobs,
    Sets,
    Facilities,
}

macro_rules! kinds {
    ($($variant:ident => $id:literal, $role:ident, $lop:literal;)*) => {
        #[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub enum ProblemKind {
            $($variant,)*
        }

        impl ProblemKind {
            pub const ALL: &'static [ProblemKind] = &[$(ProblemKind::$variant,)*];

            /// Stable identifier used in files and on the command line.
            pub fn id(self) -> &'static str {
                match self {
                    $(ProblemKind::$variant => $id,)*
                }
            }

            pub fn universe_role(self) -> UniverseRole {
                match self {
                    $(ProblemKind::$variant => UniverseRole::$role,)*
                }
            }

            /// Whether the kind carries feasible sets, a linear cost and a threshold.
            pub fn is_lop(self) -> bool {
                match self {
                    $(ProblemKind::$variant => $lop,)*
                }
            }
        }
    };
}

kinds! {
    Satisfiability => "sat", Literals, false;
    ThreeSatisfiability => "3sat", Literals, false;
    VertexCover => "vertex_cover", Vertices, true;
    IndependentSet => "independent_set", Vertices, true;
    Clique => "clique", Vertices, true;
    DominatingSet => "dominating_set", Vertices, true;
    SetCover => "set_cover", Sets, true;
    HittingSet => "hitting_set", Numbers, true;
    FeedbackVertexSet => "feedback_vertex_set", Vertices, true;
    FeedbackArcSet => "feedback_arc_set", Arcs, true;
    UncapacitatedFacilityLocation => "ufl", Facilities, false;
    PCenter => "p_center", Facilities, false;
    PMedian => "p_median", Facilities, false;
    SubsetSum => "subset_sum", Numbers, false;
    Knapsack => "knapsack", Objects, true;
    Partition => "partition", Numbers, false;
    TwoMachineScheduling => "two_machine_scheduling", Jobs, false;
    DirectedHamiltonianPath => "dham_path", Arcs, false;
    DirectedHamiltonianCycle => "dham_cycle", Arcs, false;
    UndirectedHamiltonianCycle => "uham_cycle", Edges, false;
    TravelingSalesman => "tsp", Edges, true;
    DirectedTwoDisjointPath => "2ddp", Arcs, false;
    DirectedKDisjointPath => "kddp", Arcs, false;
    SteinerTree => "steiner_tree", Edges, true;
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for ProblemKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ProblemKind::ALL
            .iter()
            .copied()
            .find(|k| k.id() == s)
            .ok_or_else(|| Error::Unknown {
                what: "problem kind",
                name: s.to_string(),
            })
    }
}

/// CNF formula over variables `1..=num_vars`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Cnf {
    pub num_vars: u32,
    pub clauses: Vec<Vec<Lit>>,
}

impl Cnf {
    pub fn new(num_vars: u32, clauses: Vec<Vec<i32>>) -> Cnf {
        Cnf {
            num_vars,
            clauses: clauses
                .into_iter()
                .map(|c| c.into_iter().map(|l| Lit::from_dimacs(l).expect("nonzero literal")).collect())
                .collect(),
        }
    }
}

/// A graph with a size bound `k` (vertex cover, independent set, clique, dominating set).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphBound {
    pub graph: Graph,
    pub k: i64,
}

/// A digraph with a size bound `k` (feedback vertex/arc set).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigraphBound {
    pub digraph: Digraph,
    pub k: i64,
}

/// Sets over the ground set `0..ground` with a size bound `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetSystem {
    pub ground: u32,
    pub sets: Vec<Vec<u32>>,
    pub k: i64,
}

/// Uncapacitated facility location: `service[i][j]` is the cost of serving
/// client `i` from facility `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacilityLocation {
    pub clients: u32,
    pub facilities: u32,
    pub opening: Vec<i64>,
    pub service: Vec<Vec<i64>>,
    pub k: i64,
}

/// p-center / p-median: open at most `p` facilities, objective bounded by `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacilitySelection {
    pub clients: u32,
    pub facilities: u32,
    pub service: Vec<Vec<i64>>,
    pub p: i64,
    pub k: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetSum {
    pub values: Vec<i64>,
    pub target: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnapsackItem {
    pub profit: i64,
    pub weight: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Knapsack {
    pub items: Vec<KnapsackItem>,
    pub capacity: i64,
    pub min_profit: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    pub values: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scheduling {
    pub times: Vec<i64>,
    pub deadline: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HamiltonianPath {
    pub digraph: Digraph,
    pub source: u32,
    pub sink: u32,
}

/// Complete graph with a weight per edge (aligned with `graph.edges`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tsp {
    pub graph: Graph,
    pub weights: Vec<i64>,
    pub k: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DisjointPaths {
    pub digraph: Digraph,
    pub pairs: Vec<(u32, u32)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Steiner {
    pub graph: Graph,
    pub weights: Vec<i64>,
    pub terminals: Vec<u32>,
    pub k: i64,
}

/// Kind-tagged instance data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Payload {
    Sat(Cnf),
    ThreeSat(Cnf),
    VertexCover(GraphBound),
    IndependentSet(GraphBound),
    Clique(GraphBound),
    DominatingSet(GraphBound),
    SetCover(SetSystem),
    HittingSet(SetSystem),
    FeedbackVertexSet(DigraphBound),
    FeedbackArcSet(DigraphBound),
    FacilityLocation(FacilityLocation),
    PCenter(FacilitySelection),
    PMedian(FacilitySelection),
    SubsetSum(SubsetSum),
    Knapsack(Knapsack),
    Partition(Partition),
    TwoMachineScheduling(Scheduling),
    HamiltonianPath(HamiltonianPath),
    HamiltonianCycle(Digraph),
    UndirectedHamiltonianCycle(Graph),
    Tsp(Tsp),
    TwoDisjointPaths(DisjointPaths),
    KDisjointPaths(DisjointPaths),
    SteinerTree(Steiner),
}

impl Payload {
    pub fn kind(&self) -> ProblemKind {
        use ProblemKind as K;
        match self {
            Payload::Sat(_) => K::Satisfiability,
            Payload::ThreeSat(_) => K::ThreeSatisfiability,
            Payload::VertexCover(_) => K::VertexCover,
            Payload::IndependentSet(_) => K::IndependentSet,
            Payload::Clique(_) => K::Clique,
            Payload::DominatingSet(_) => K::DominatingSet,
            Payload::SetCover(_) => K::SetCover,
            Payload::HittingSet(_) => K::HittingSet,
            Payload::FeedbackVertexSet(_) => K::FeedbackVertexSet,
            Payload::FeedbackArcSet(_) => K::FeedbackArcSet,
            Payload::FacilityLocation(_) => K::UncapacitatedFacilityLocation,
            Payload::PCenter(_) => K::PCenter,
            Payload::PMedian(_) => K::PMedian,
            Payload::SubsetSum(_) => K::SubsetSum,
            Payload::Knapsack(_) => K::Knapsack,
            Payload::Partition(_) => K::Partition,
            Payload::TwoMachineScheduling(_) => K::TwoMachineScheduling,
            Payload::HamiltonianPath(_) => K::DirectedHamiltonianPath,
            Payload::HamiltonianCycle(_) => K::DirectedHamiltonianCycle,
            Payload::UndirectedHamiltonianCycle(_) => K::UndirectedHamiltonianCycle,
            Payload::Tsp(_) => K::TravelingSalesman,
            Payload::TwoDisjointPaths(_) => K::DirectedTwoDisjointPath,
            Payload::KDisjointPaths(_) => K::DirectedKDisjointPath,
            Payload::SteinerTree(_) => K::SteinerTree,
        }
    }

    fn model(&self) -> Box<dyn Model + '_> {
        match self {
            Payload::Sat(c) => Box::new(sat::SatModel { cnf: c, exact_three: false }),
            Payload::ThreeSat(c) => Box::new(sat::SatModel { cnf: c, exact_three: true }),
            Payload::VertexCover(g) => Box::new(graph_kinds::VertexCoverModel(g)),
            Payload::IndependentSet(g) => Box::new(graph_kinds::IndependentSetModel(g)),
            Payload::Clique(g) => Box::new(graph_kinds::CliqueModel(g)),
            Payload::DominatingSet(g) => Box::new(graph_kinds::DominatingSetModel(g)),
            Payload::SetCover(s) => Box::new(covering::SetCoverModel(s)),
            Payload::HittingSet(s) => Box::new(covering::HittingSetModel(s)),
            Payload::FeedbackVertexSet(d) => Box::new(feedback::FeedbackVertexModel(d)),
            Payload::FeedbackArcSet(d) => Box::new(feedback::FeedbackArcModel(d)),
            Payload::FacilityLocation(f) => Box::new(facility::FacilityLocationModel(f)),
            Payload::PCenter(f) => Box::new(facility::SelectionModel { inst: f, center: true }),
            Payload::PMedian(f) => Box::new(facility::SelectionModel { inst: f, center: false }),
            Payload::SubsetSum(s) => Box::new(numbers::SubsetSumModel(s)),
            Payload::Knapsack(k) => Box::new(numbers::KnapsackModel(k)),
            Payload::Partition(p) => Box::new(numbers::PartitionModel(p)),
            Payload::TwoMachineScheduling(s) => Box::new(numbers::SchedulingModel(s)),
            Payload::HamiltonianPath(h) => Box::new(hamilton::PathModel(h)),
            Payload::HamiltonianCycle(d) => Box::new(hamilton::DirectedCycleModel(d)),
            Payload::UndirectedHamiltonianCycle(g) => Box::new(hamilton::UndirectedCycleModel(g)),
            Payload::Tsp(t) => Box::new(hamilton::TspModel(t)),
            Payload::TwoDisjointPaths(d) => Box::new(disjoint::DisjointPathsModel { inst: d, exactly_two: true }),
            Payload::KDisjointPaths(d) => Box::new(disjoint::DisjointPathsModel { inst: d, exactly_two: false }),
            Payload::SteinerTree(s) => Box::new(steiner::SteinerModel(s)),
        }
    }
}

/// Per-kind behaviour. Subsets arrive as membership masks over the universe.
pub(crate) trait Model {
    fn validate(&self, out: &mut Vec<String>);
    fn elements(&self) -> Vec<ElementId>;
    fn accepts(&self, universe: &Universe, mask: &[bool]) -> bool;
    fn enumerate(&self, search: &mut Search<'_>) -> Step;
    fn lop(&self) -> Option<&dyn LopModel> {
        None
    }
}

pub(crate) trait LopModel {
    fn feasible(&self, universe: &Universe, mask: &[bool]) -> bool;
    fn cost(&self, e: ElementId) -> i64;
    fn threshold(&self) -> i64;
    fn enumerate_feasible(&self, search: &mut Search<'_>) -> Step;
}

/// Structural validation of a payload.
pub fn validate(payload: &Payload) -> std::result::Result<(), Diagnostics> {
    let mut out = Vec::new();
    payload.model().validate(&mut out);
    if out.is_empty() {
        Ok(())
    } else {
        Err(Diagnostics(out))
    }
}

/// Linear cost and threshold of an LOP instance, aligned with its universe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LopExtras {
    pub costs: Vec<i64>,
    pub threshold: i64,
}

impl LopExtras {
    pub fn cost_of_mask(&self, mask: &[bool]) -> i128 {
        mask.iter()
            .zip(&self.costs)
            .filter(|(m, _)| **m)
            .map(|(_, &c)| c as i128)
            .sum()
    }
}

/// A validated instance of one catalog kind.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    payload: Payload,
    universe: Universe,
}

impl Instance {
    pub fn new(payload: Payload) -> Result<Instance> {
        validate(&payload).map_err(Error::Invalid)?;
        let universe = Universe::from_distinct(payload.model().elements());
        Ok(Instance { payload, universe })
    }

    pub fn kind(&self) -> ProblemKind {
        self.payload.kind()
    }

    pub fn payload(&self) -> &Payload {
        &self.payload
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn is_solution(&self, s: &Subset) -> Result<bool> {
        let mask = self.universe.mask(s)?;
        Ok(self.payload.model().accepts(&self.universe, &mask))
    }

    pub fn enumerate_solutions(&self, budget: u64) -> SolutionFamily {
        let model = self.payload.model();
        search::run(&self.universe, budget, |s| model.enumerate(s))
    }

    fn not_lop(&self) -> Error {
        Error::NotAnLop(self.kind().id().to_string())
    }

    pub fn is_feasible(&self, s: &Subset) -> Result<bool> {
        let model = self.payload.model();
        let lop = model.lop().ok_or_else(|| self.not_lop())?;
        let mask = self.universe.mask(s)?;
        Ok(lop.feasible(&self.universe, &mask))
    }

    pub fn lop_extras(&self) -> Result<LopExtras> {
        let model = self.payload.model();
        let lop = model.lop().ok_or_else(|| self.not_lop())?;
        Ok(LopExtras {
            costs: self.universe.iter().map(|&e| lop.cost(e)).collect(),
            threshold: lop.threshold(),
        })
    }

    pub fn enumerate_feasible(&self, budget: u64) -> Result<SolutionFamily> {
        let model = self.payload.model();
        let lop = model.lop().ok_or_else(|| self.not_lop())?;
        Ok(search::run(&self.universe, budget, |s| lop.enumerate_feasible(s)))
    }
}

impl Ssp for Instance {
    fn universe(&self) -> &Universe {
        &self.universe
    }

    fn describe(&self) -> String {
        self.kind().id().to_string()
    }

    fn accepts(&self, s: &Subset) -> Result<bool> {
        self.is_solution(s)
    }

    fn enumerate_solutions(&self, budget: u64) -> Result<SolutionFamily> {
        Ok(Instance::enumerate_solutions(self, budget))
    }
}

/// Positions in `mask` that are set.
pub(crate) fn chosen(mask: &[bool]) -> impl Iterator<Item = usize> + '_ {
    mask.iter().enumerate().filter(|(_, &m)| m).map(|(i, _)| i)
}

/// Sum of selected values in 128-bit arithmetic.
pub(crate) fn selected_sum(values: &[i64], mask: &[bool]) -> i128 {
    values
        .iter()
        .zip(mask)
        .filter(|(_, &m)| m)
        .map(|(&v, _)| v as i128)
        .sum()
}

pub(crate) fn check_nonnegative(what: &str, values: &[i64], out: &mut Vec<String>) {
    if let Some(v) = values.iter().find(|&&v| v < 0) {
        out.push(format!("{what} must be nonnegative, found {v}"));
    }
}

#[cfg(test)]
mod tests;
