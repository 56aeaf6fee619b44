//! Ground-set elements, universes and subsets.
//!
//! Every element has exactly one textual form; two elements are equal iff
//! their texts are equal, and the derived ordering (namespace first, then
//! indices) is the canonical order used everywhere else.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A propositional literal over variable `var >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lit {
    var: u32,
    negated: bool,
}

impl Lit {
    pub fn new(var: u32, negated: bool) -> Lit {
        assert!(var >= 1, "variables are numbered from 1");
        Lit { var, negated }
    }

    pub fn pos(var: u32) -> Lit {
        Lit::new(var, false)
    }

    pub fn neg(var: u32) -> Lit {
        Lit::new(var, true)
    }

    /// Signed DIMACS encoding; `0` is rejected.
    pub fn from_dimacs(code: i32) -> Option<Lit> {
        if code == 0 {
            return None;
        }
        Some(Lit::new(code.unsigned_abs(), code < 0))
    }

    pub fn to_dimacs(self) -> i32 {
        let v = self.var as i32;
        if self.negated {
            -v
        } else {
            v
        }
    }

    pub fn var(self) -> u32 {
        self.var
    }

    pub fn is_negated(self) -> bool {
        self.negated
    }

    pub fn negate(self) -> Lit {
        Lit {
            var: self.var,
            negated: !self.negated,
        }
    }

    /// Truth value under an assignment indexed by variable (index 0 unused).
    pub fn holds(self, assignment: &[bool]) -> bool {
        assignment[self.var as usize] != self.negated
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ElementId {
    Literal(Lit),
    Vertex(u32),
    /// Undirected edge, stored with the smaller endpoint first.
    Edge(u32, u32),
    Arc(u32, u32),
    Number(u32),
    Object(u32),
    Job(u32),
    Set(u32),
    Facility(u32),
}

impl ElementId {
    pub fn edge(a: u32, b: u32) -> ElementId {
        ElementId::Edge(a.min(b), a.max(b))
    }

    pub fn literal(code: i32) -> ElementId {
        ElementId::Literal(Lit::from_dimacs(code).expect("nonzero literal"))
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ElementId::Literal(l) => write!(f, "lit:{l}"),
            ElementId::Vertex(v) => write!(f, "v:{v}"),
            ElementId::Edge(a, b) => write!(f, "e:{a}-{b}"),
            ElementId::Arc(a, b) => write!(f, "a:{a}>{b}"),
            ElementId::Number(i) => write!(f, "n:{i}"),
            ElementId::Object(i) => write!(f, "o:{i}"),
            ElementId::Job(i) => write!(f, "j:{i}"),
            ElementId::Set(i) => write!(f, "s:{i}"),
            ElementId::Facility(i) => write!(f, "f:{i}"),
        }
    }
}

/// Strict unsigned parse: no sign, no leading zeros.
fn canonical_u32(text: &str) -> Option<u32> {
    if text.is_empty() || !text.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    if text.len() > 1 && text.starts_with('0') {
        return None;
    }
    text.parse().ok()
}

fn pair(text: &str, sep: char) -> Option<(u32, u32)> {
    let (a, b) = text.split_once(sep)?;
    Some((canonical_u32(a)?, canonical_u32(b)?))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BadElement(pub String);

impl fmt::Display for BadElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "not a canonical element id: `{}`", self.0)
    }
}

impl std::error::Error for BadElement {}

impl FromStr for ElementId {
    type Err = BadElement;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let bad = || BadElement(s.to_string());
        let (tag, rest) = s.split_once(':').ok_or_else(bad)?;
        let id = match tag {
            "lit" => {
                let (neg, digits) = match rest.strip_prefix('-') {
                    Some(d) => (true, d),
                    None => (false, rest),
                };
                let var = canonical_u32(digits).filter(|&v| v >= 1).ok_or_else(bad)?;
                ElementId::Literal(Lit::new(var, neg))
            }
            "v" => ElementId::Vertex(canonical_u32(rest).ok_or_else(bad)?),
            "e" => {
                let (a, b) = pair(rest, '-').ok_or_else(bad)?;
                if a >= b {
                    return Err(bad());
                }
                ElementId::Edge(a, b)
            }
            "a" => {
                let (a, b) = pair(rest, '>').ok_or_else(bad)?;
                ElementId::Arc(a, b)
            }
            "n" => ElementId::Number(canonical_u32(rest).ok_or_else(bad)?),
            "o" => ElementId::Object(canonical_u32(rest).ok_or_else(bad)?),
            "j" => ElementId::Job(canonical_u32(rest).ok_or_else(bad)?),
            "s" => ElementId::Set(canonical_u32(rest).ok_or_else(bad)?),
            "f" => ElementId::Facility(canonical_u32(rest).ok_or_else(bad)?),
            _ => return Err(bad()),
        };
        Ok(id)
    }
}

/// Ordered ground set of an instance.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Universe(Vec<ElementId>);

impl Universe {
    /// Builds a universe, rejecting duplicates.
    pub fn new(mut elements: Vec<ElementId>) -> Result<Universe> {
        elements.sort_unstable();
        if let Some(w) = elements.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Precondition(format!("duplicate universe element {}", w[0])));
        }
        Ok(Universe(elements))
    }

    pub(crate) fn from_distinct(elements: Vec<ElementId>) -> Universe {
        Universe::new(elements).expect("generated universe elements are distinct")
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ElementId> {
        self.0.iter()
    }

    pub fn as_slice(&self) -> &[ElementId] {
        &self.0
    }

    pub fn contains(&self, e: &ElementId) -> bool {
        self.0.binary_search(e).is_ok()
    }

    pub fn index_of(&self, e: &ElementId) -> Option<usize> {
        self.0.binary_search(e).ok()
    }

    pub fn get(&self, i: usize) -> ElementId {
        self.0[i]
    }

    /// The subset made of the elements at the given positions.
    pub fn subset_of(&self, positions: &[usize]) -> Subset {
        Subset::new(positions.iter().map(|&i| self.0[i]))
    }

    /// Membership mask of `s` over this universe; `Err` names a foreign element.
    pub fn mask(&self, s: &Subset) -> Result<Vec<bool>> {
        let mut mask = vec![false; self.len()];
        for e in s.iter() {
            let i = self.index_of(e).ok_or(Error::ForeignElement(*e))?;
            mask[i] = true;
        }
        Ok(mask)
    }

    pub fn whole(&self) -> Subset {
        Subset(self.0.clone())
    }
}

impl fmt::Display for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Subset(self.0.clone()).fmt(f)
    }
}

impl FromStr for Universe {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let subset: Subset = s.parse()?;
        Ok(Universe(subset.0))
    }
}

/// A sorted, duplicate-free set of elements. The derived ordering compares
/// the sorted sequences lexicographically, which is the canonical subset order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Subset(Vec<ElementId>);

impl Subset {
    pub fn new(elements: impl IntoIterator<Item = ElementId>) -> Subset {
        let mut v: Vec<ElementId> = elements.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Subset(v)
    }

    pub fn empty() -> Subset {
        Subset(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ElementId> {
        self.0.iter()
    }

    pub fn as_slice(&self) -> &[ElementId] {
        &self.0
    }

    pub fn contains(&self, e: &ElementId) -> bool {
        self.0.binary_search(e).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.0.iter().all(|e| other.contains(e))
    }

    pub fn intersects(&self, other: &Subset) -> bool {
        self.0.iter().any(|e| other.contains(e))
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        Subset(self.0.iter().copied().filter(|e| other.contains(e)).collect())
    }

    pub fn union(&self, other: &Subset) -> Subset {
        Subset::new(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn difference(&self, other: &Subset) -> Subset {
        Subset(self.0.iter().copied().filter(|e| !other.contains(e)).collect())
    }

    pub fn map(&self, f: impl FnMut(&ElementId) -> ElementId) -> Subset {
        Subset::new(self.0.iter().map(f))
    }
}

impl FromIterator<ElementId> for Subset {
    fn from_iter<I: IntoIterator<Item = ElementId>>(iter: I) -> Self {
        Subset::new(iter)
    }
}

impl From<BTreeSet<ElementId>> for Subset {
    fn from(set: BTreeSet<ElementId>) -> Self {
        Subset(set.into_iter().collect())
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

impl FromStr for Subset {
    type Err = Error;

    /// Accepts exactly the canonical `{a b c}` form.
    fn from_str(s: &str) -> Result<Self> {
        let err = |msg: &str| Error::Parse(crate::error::ParseError::new(1, 1, msg));
        let inner = s
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| err("subset must be enclosed in braces"))?;
        let mut out: Vec<ElementId> = Vec::new();
        if !inner.is_empty() {
            for tok in inner.split(' ') {
                let e: ElementId = tok.parse().map_err(|b: BadElement| err(&b.to_string()))?;
                if let Some(last) = out.last() {
                    if *last >= e {
                        return Err(err("subset elements must be strictly increasing"));
                    }
                }
                out.push(e);
            }
        }
        Ok(Subset(out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn literal_order_puts_positive_first() {
        assert!(Lit::pos(1) < Lit::neg(1));
        assert!(Lit::neg(1) < Lit::pos(2));
    }

    #[test]
    fn namespaces_order_before_indices() {
        assert!(ElementId::literal(-9) < ElementId::Vertex(0));
        assert!(ElementId::Vertex(100) < ElementId::Edge(0, 1));
        assert!(ElementId::Arc(3, 1) < ElementId::Number(0));
    }

    #[test]
    fn noncanonical_texts_are_rejected() {
        for bad in ["v:01", "e:3-1", "e:2-2", "lit:0", "lit:+1", "x:1", "v:", "a:1-2", "v:-1"] {
            assert!(bad.parse::<ElementId>().is_err(), "{bad}");
        }
    }

    #[test]
    fn universe_rejects_duplicates() {
        assert!(Universe::new(vec![ElementId::Vertex(1), ElementId::Vertex(1)]).is_err());
    }

    #[test]
    fn subset_text_round_trip() {
        let s = Subset::new([ElementId::Vertex(2), ElementId::literal(-1), ElementId::edge(4, 1)]);
        assert_eq!(s.to_string(), "{lit:-1 v:2 e:1-4}");
        assert_eq!(s.to_string().parse::<Subset>().unwrap(), s);
        assert!("{v:2 v:1}".parse::<Subset>().is_err());
        assert_eq!("{}".parse::<Subset>().unwrap(), Subset::empty());
    }

    fn any_element() -> impl Strategy<Value = ElementId> {
        prop_oneof![
            (1u32..50, any::<bool>()).prop_map(|(v, n)| ElementId::Literal(Lit::new(v, n))),
            (0u32..50).prop_map(ElementId::Vertex),
            (0u32..50, 0u32..50)
                .prop_filter("loop", |(a, b)| a != b)
                .prop_map(|(a, b)| ElementId::edge(a, b)),
            (0u32..50, 0u32..50).prop_map(|(a, b)| ElementId::Arc(a, b)),
            (0u32..50).prop_map(ElementId::Number),
            (0u32..50).prop_map(ElementId::Object),
            (0u32..50).prop_map(ElementId::Job),
            (0u32..50).prop_map(ElementId::Set),
            (0u32..50).prop_map(ElementId::Facility),
        ]
    }

    proptest! {
        #[test]
        fn element_text_is_a_bijection(a in any_element(), b in any_element()) {
            prop_assert_eq!(a.to_string().parse::<ElementId>().unwrap(), a);
            prop_assert_eq!(a == b, a.to_string() == b.to_string());
        }

        #[test]
        fn subset_round_trip(v in proptest::collection::vec(any_element(), 0..12)) {
            let s = Subset::new(v);
            prop_assert_eq!(s.to_string().parse::<Subset>().unwrap(), s);
        }
    }
}
