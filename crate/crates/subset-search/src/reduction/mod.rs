//! Solution-preserving reductions as trait objects, addressable by id.

mod cover;
mod hamilton;
mod numbers;
mod paths;
mod sat;
mod steiner;
pub mod verify;

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::catalog::{Instance, Payload, ProblemKind};
use crate::element::{ElementId, Subset, Universe};
use crate::error::{Error, ParseError, Result};

pub use paths::PadDisjointPaths;
pub use verify::{verify_embedding, verify_ssp, Side, Verdict, VerificationReport};

/// Injective map from a source universe into a target universe.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Embedding {
    map: BTreeMap<ElementId, ElementId>,
}

impl Embedding {
    /// Builds an embedding, rejecting repeated sources or targets.
    pub fn new(pairs: impl IntoIterator<Item = (ElementId, ElementId)>) -> Result<Embedding> {
        let mut map = BTreeMap::new();
        let mut images = BTreeSet::new();
        for (a, b) in pairs {
            if map.insert(a, b).is_some() {
                return Err(Error::Precondition(format!("element {a} embedded twice")));
            }
            if !images.insert(b) {
                return Err(Error::Precondition(format!("embedding not injective at {b}")));
            }
        }
        Ok(Embedding { map })
    }

    pub fn identity(universe: &Universe) -> Embedding {
        Embedding {
            map: universe.iter().map(|&e| (e, e)).collect(),
        }
    }

    pub fn get(&self, e: &ElementId) -> Option<ElementId> {
        self.map.get(e).copied()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&ElementId, &ElementId)> {
        self.map.iter()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// `f(S)`; elements outside the domain are an error.
    pub fn image_of(&self, s: &Subset) -> Result<Subset> {
        s.iter()
            .map(|e| self.get(e).ok_or(Error::ForeignElement(*e)))
            .collect::<Result<Vec<_>>>()
            .map(Subset::new)
    }

    /// `f(U)`, the embedded image of the whole domain.
    pub fn image(&self) -> Subset {
        Subset::new(self.map.values().copied())
    }

    /// Inverse lookup on the image.
    pub fn preimage(&self, target: &ElementId) -> Option<ElementId> {
        self.map.iter().find(|(_, v)| *v == target).map(|(k, _)| *k)
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &Embedding) -> Result<Embedding> {
        Embedding::new(
            self.map
                .iter()
                .map(|(a, b)| next.get(b).map(|c| (*a, c)).ok_or(Error::ForeignElement(*b)))
                .collect::<Result<Vec<_>>>()?,
        )
    }

    /// Totality on `source` and containment of the image in `target`.
    pub fn check(&self, source: &Universe, target: &Universe) -> Result<()> {
        if self.map.len() != source.len() || source.iter().any(|e| !self.map.contains_key(e)) {
            return Err(Error::Precondition("embedding is not total on the source universe".into()));
        }
        if let Some(b) = self.map.values().find(|b| !target.contains(b)) {
            return Err(Error::ForeignElement(*b));
        }
        Ok(())
    }
}

impl fmt::Display for Embedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, b) in &self.map {
            writeln!(f, "{a} {b}")?;
        }
        Ok(())
    }
}

impl FromStr for Embedding {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            let [a, b] = toks.as_slice() else {
                return Err(ParseError::new(i + 1, 1, "expected `source-id target-id`").into());
            };
            let a = a.parse().map_err(|e: crate::element::BadElement| ParseError::new(i + 1, 1, e.to_string()))?;
            let b = b.parse().map_err(|e: crate::element::BadElement| ParseError::new(i + 1, 1, e.to_string()))?;
            pairs.push((a, b));
        }
        Embedding::new(pairs)
    }
}

/// Where a reduction value came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Catalog,
    Composed,
    /// A catalog reduction carried over to a variant family.
    Lifted,
    /// A deliberately broken variant kept to show the verifier rejects it.
    NegativeControl,
}

impl Provenance {
    pub fn tag(self) -> &'static str {
        match self {
            Provenance::Catalog => "catalog",
            Provenance::Composed => "composed",
            Provenance::Lifted => "lifted",
            Provenance::NegativeControl => "negative-control",
        }
    }
}

/// Output of applying a reduction to one instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduced {
    pub target: Instance,
    pub embedding: Embedding,
}

pub trait Reduction: Send + Sync {
    fn id(&self) -> String;
    fn source(&self) -> ProblemKind;
    fn target(&self) -> ProblemKind;
    fn provenance(&self) -> Provenance;

    /// Maps `x` to a target instance together with the universe embedding.
    fn apply(&self, x: &Instance) -> Result<Reduced>;
}

pub(crate) fn expect_kind(x: &Instance, kind: ProblemKind) -> Result<()> {
    if x.kind() == kind {
        Ok(())
    } else {
        Err(Error::KindMismatch {
            expected: kind.id().into(),
            found: x.kind().id().into(),
        })
    }
}

type Construction = fn(&Instance) -> Result<(Payload, Vec<(ElementId, ElementId)>)>;

/// A catalog reduction given by a construction function.
pub struct CatalogReduction {
    id: &'static str,
    source: ProblemKind,
    target: ProblemKind,
    construct: Construction,
    provenance: Provenance,
}

impl Reduction for CatalogReduction {
    fn id(&self) -> String {
        self.id.to_string()
    }

    fn source(&self) -> ProblemKind {
        self.source
    }

    fn target(&self) -> ProblemKind {
        self.target
    }

    fn provenance(&self) -> Provenance {
        self.provenance
    }

    fn apply(&self, x: &Instance) -> Result<Reduced> {
        expect_kind(x, self.source)?;
        let (payload, pairs) = (self.construct)(x)?;
        let target = Instance::new(payload)?;
        let embedding = Embedding::new(pairs)?;
        embedding.check(x.universe(), target.universe())?;
        Ok(Reduced { target, embedding })
    }
}

/// `second ∘ first`: instances go through both, embeddings compose.
pub struct Composed {
    first: Arc<dyn Reduction>,
    second: Arc<dyn Reduction>,
}

impl Reduction for Composed {
    fn id(&self) -> String {
        format!("{},{}", self.first.id(), self.second.id())
    }

    fn source(&self) -> ProblemKind {
        self.first.source()
    }

    fn target(&self) -> ProblemKind {
        self.second.target()
    }

    fn provenance(&self) -> Provenance {
        Provenance::Composed
    }

    fn apply(&self, x: &Instance) -> Result<Reduced> {
        let mid = self.first.apply(x)?;
        let out = self.second.apply(&mid.target)?;
        Ok(Reduced {
            embedding: mid.embedding.then(&out.embedding)?,
            target: out.target,
        })
    }
}

pub fn compose(first: Arc<dyn Reduction>, second: Arc<dyn Reduction>) -> Result<Arc<dyn Reduction>> {
    if first.target() != second.source() {
        return Err(Error::KindMismatch {
            expected: first.target().id().into(),
            found: second.source().id().into(),
        });
    }
    Ok(Arc::new(Composed { first, second }))
}

macro_rules! entry {
    ($id:literal, $from:ident => $to:ident, $f:path) => {
        CatalogReduction {
            id: $id,
            source: ProblemKind::$from,
            target: ProblemKind::$to,
            construct: $f,
            provenance: Provenance::Catalog,
        }
    };
}

/// The reduction tree, in a fixed order.
fn catalog_entries() -> Vec<Arc<dyn Reduction>> {
    let entries: Vec<CatalogReduction> = vec![
        entry!("sat_to_3sat", Satisfiability => ThreeSatisfiability, sat::sat_to_three_sat),
        entry!("3sat_to_vertex_cover", ThreeSatisfiability => VertexCover, sat::three_sat_to_vertex_cover),
        entry!("vertex_cover_to_dominating_set", VertexCover => DominatingSet, cover::to_dominating_set),
        entry!("vertex_cover_to_set_cover", VertexCover => SetCover, cover::to_set_cover),
        entry!("vertex_cover_to_hitting_set", VertexCover => HittingSet, cover::to_hitting_set),
        entry!("vertex_cover_to_feedback_vertex_set", VertexCover => FeedbackVertexSet, cover::to_feedback_vertex_set),
        entry!("vertex_cover_to_feedback_arc_set", VertexCover => FeedbackArcSet, cover::to_feedback_arc_set),
        entry!("vertex_cover_to_ufl", VertexCover => UncapacitatedFacilityLocation, cover::to_facility_location),
        entry!("vertex_cover_to_p_center", VertexCover => PCenter, cover::to_p_center),
        entry!("vertex_cover_to_p_median", VertexCover => PMedian, cover::to_p_median),
        entry!("3sat_to_independent_set", ThreeSatisfiability => IndependentSet, sat::three_sat_to_independent_set),
        entry!("independent_set_to_clique", IndependentSet => Clique, cover::independent_set_to_clique),
        entry!("3sat_to_subset_sum", ThreeSatisfiability => SubsetSum, numbers::three_sat_to_subset_sum),
        entry!("subset_sum_to_knapsack", SubsetSum => Knapsack, numbers::subset_sum_to_knapsack),
        entry!("subset_sum_to_partition", SubsetSum => Partition, numbers::subset_sum_to_partition),
        entry!("partition_to_two_machine_scheduling", Partition => TwoMachineScheduling, numbers::partition_to_scheduling),
        entry!("3sat_to_dham_path", ThreeSatisfiability => DirectedHamiltonianPath, hamilton::three_sat_to_path),
        entry!("dham_path_to_dham_cycle", DirectedHamiltonianPath => DirectedHamiltonianCycle, hamilton::path_to_cycle),
        entry!("dham_cycle_to_uham_cycle", DirectedHamiltonianCycle => UndirectedHamiltonianCycle, hamilton::directed_to_undirected),
        entry!("uham_cycle_to_tsp", UndirectedHamiltonianCycle => TravelingSalesman, hamilton::cycle_to_tsp),
        entry!("3sat_to_2ddp", ThreeSatisfiability => DirectedTwoDisjointPath, paths::three_sat_to_two_paths),
    ];
    let mut out: Vec<Arc<dyn Reduction>> = entries.into_iter().map(|e| Arc::new(e) as Arc<dyn Reduction>).collect();
    out.push(Arc::new(PadDisjointPaths::new(3)));
    out.push(Arc::new(entry!("3sat_to_steiner_tree", ThreeSatisfiability => SteinerTree, steiner::three_sat_to_steiner)));
    out
}

/// Id of the deliberately broken 3SAT→VC variant with the bound lowered by one.
pub const CORRUPTED_VERTEX_COVER: &str = "3sat_to_vertex_cover_k_minus_1";

/// Reductions addressable by string id.
#[derive(Clone)]
pub struct Registry {
    entries: BTreeMap<String, Arc<dyn Reduction>>,
    order: Vec<String>,
}

impl Registry {
    pub fn empty() -> Registry {
        Registry {
            entries: BTreeMap::new(),
            order: Vec::new(),
        }
    }

    /// The reduction tree only.
    pub fn catalog() -> Registry {
        let mut r = Registry::empty();
        for e in catalog_entries() {
            r.register(e);
        }
        r
    }

    /// The reduction tree plus the negative-control entries.
    pub fn with_controls() -> Registry {
        let mut r = Registry::catalog();
        r.register(Arc::new(CatalogReduction {
            id: CORRUPTED_VERTEX_COVER,
            source: ProblemKind::ThreeSatisfiability,
            target: ProblemKind::VertexCover,
            construct: sat::three_sat_to_vertex_cover_tight,
            provenance: Provenance::NegativeControl,
        }));
        r
    }

    pub fn register(&mut self, r: Arc<dyn Reduction>) {
        let id = r.id();
        if self.entries.insert(id.clone(), r).is_none() {
            self.order.push(id);
        }
    }

    pub fn get(&self, id: &str) -> Result<Arc<dyn Reduction>> {
        self.entries.get(id).cloned().ok_or_else(|| Error::Unknown {
            what: "reduction",
            name: id.to_string(),
        })
    }

    /// Entries in registration order.
    pub fn iter(&self) -> impl Iterator<Item = Arc<dyn Reduction>> + '_ {
        self.order.iter().map(|id| self.entries[id].clone())
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Composes a comma-separated chain of ids (a single id is returned as is).
    pub fn chain(&self, ids: &str) -> Result<Arc<dyn Reduction>> {
        let mut parts = ids.split(',').map(str::trim).filter(|s| !s.is_empty());
        let first = parts.next().ok_or_else(|| Error::Unknown {
            what: "reduction",
            name: ids.to_string(),
        })?;
        let mut acc = self.get(first)?;
        for id in parts {
            acc = compose(acc, self.get(id)?)?;
        }
        Ok(acc)
    }

    /// Shortest chain of catalog entries from one kind to another.
    pub fn path(&self, from: ProblemKind, to: ProblemKind) -> Option<Vec<Arc<dyn Reduction>>> {
        let catalog: Vec<Arc<dyn Reduction>> = self
            .iter()
            .filter(|r| r.provenance() == Provenance::Catalog)
            .collect();
        let mut prev: BTreeMap<ProblemKind, usize> = BTreeMap::new();
        let mut queue = VecDeque::from([from]);
        let mut seen = BTreeSet::from([from]);
        while let Some(k) = queue.pop_front() {
            if k == to {
                let mut chain = Vec::new();
                let mut cur = to;
                while cur != from {
                    let r = &catalog[prev[&cur]];
                    chain.push(r.clone());
                    cur = r.source();
                }
                chain.reverse();
                return Some(chain);
            }
            for (i, r) in catalog.iter().enumerate() {
                if r.source() == k && seen.insert(r.target()) {
                    prev.insert(r.target(), i);
                    queue.push_back(r.target());
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests;
