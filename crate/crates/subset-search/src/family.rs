use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::element::{Subset, Universe};
use crate::error::{Error, ParseError, Result};

/// Default number of candidates an enumeration may visit.
pub const DEFAULT_BUDGET: u64 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnumStatus {
    Complete,
    BudgetExceeded,
}

/// A family of subsets in canonical order, tagged with whether the
/// enumeration that produced it ran to completion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionFamily {
    members: BTreeSet<Subset>,
    status: EnumStatus,
}

impl SolutionFamily {
    pub fn complete(members: impl IntoIterator<Item = Subset>) -> Self {
        SolutionFamily {
            members: members.into_iter().collect(),
            status: EnumStatus::Complete,
        }
    }

    pub fn partial(members: impl IntoIterator<Item = Subset>) -> Self {
        SolutionFamily {
            members: members.into_iter().collect(),
            status: EnumStatus::BudgetExceeded,
        }
    }

    pub fn status(&self) -> EnumStatus {
        self.status
    }

    pub fn is_complete(&self) -> bool {
        self.status == EnumStatus::Complete
    }

    /// The members, or `BudgetExceeded` if the family is partial.
    pub fn require_complete(&self, budget: u64) -> Result<&BTreeSet<Subset>> {
        match self.status {
            EnumStatus::Complete => Ok(&self.members),
            EnumStatus::BudgetExceeded => Err(Error::BudgetExceeded(budget)),
        }
    }

    pub fn members(&self) -> &BTreeSet<Subset> {
        &self.members
    }

    pub fn into_members(self) -> BTreeSet<Subset> {
        self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, s: &Subset) -> bool {
        self.members.contains(s)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Subset> {
        self.members.iter()
    }

    /// True when every member is drawn from `universe`.
    pub fn within(&self, universe: &Universe) -> bool {
        self.members.iter().all(|s| s.iter().all(|e| universe.contains(e)))
    }
}

impl fmt::Display for SolutionFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match self.status {
            EnumStatus::Complete => "complete",
            EnumStatus::BudgetExceeded => "budget-exceeded",
        };
        writeln!(f, "family {status} {}", self.members.len())?;
        for s in &self.members {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

impl FromStr for SolutionFamily {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| ParseError::new(1, 1, "empty family text"))?;
        let parts: Vec<&str> = header.split(' ').collect();
        let (status, count) = match parts.as_slice() {
            ["family", status, count] => (*status, *count),
            _ => return Err(ParseError::new(1, 1, "expected `family <status> <count>`").into()),
        };
        let status = match status {
            "complete" => EnumStatus::Complete,
            "budget-exceeded" => EnumStatus::BudgetExceeded,
            _ => return Err(ParseError::new(1, 8, "unknown family status").into()),
        };
        let count: usize = count.parse().map_err(|_| ParseError::new(1, 1, "bad member count"))?;
        let mut members = BTreeSet::new();
        let mut prev: Option<Subset> = None;
        for (i, line) in lines.enumerate() {
            let s: Subset = line
                .parse()
                .map_err(|e: Error| ParseError::new(i + 2, 1, e.to_string()))?;
            if prev.as_ref().is_some_and(|p| *p >= s) {
                return Err(ParseError::new(i + 2, 1, "members must be strictly increasing").into());
            }
            prev = Some(s.clone());
            members.insert(s);
        }
        if members.len() != count {
            return Err(ParseError::new(1, 1, "member count does not match header").into());
        }
        Ok(SolutionFamily { members, status })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::ElementId;

    #[test]
    fn family_text_round_trip() {
        let fam = SolutionFamily::complete([
            Subset::new([ElementId::Vertex(1), ElementId::Vertex(0)]),
            Subset::empty(),
        ]);
        let text = fam.to_string();
        assert_eq!(text, "family complete 2\n{}\n{v:0 v:1}\n");
        assert_eq!(text.parse::<SolutionFamily>().unwrap(), fam);
    }

    #[test]
    fn partial_family_refuses_equality_use() {
        let fam = SolutionFamily::partial([Subset::empty()]);
        assert!(matches!(fam.require_complete(7), Err(Error::BudgetExceeded(7))));
    }
}
