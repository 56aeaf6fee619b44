use crate::element::{Subset, Universe};
use crate::error::Result;
use crate::family::SolutionFamily;

/// Anything with a universe and a decidable solution family: catalog
/// instances as well as the variant problems wrapped as subset problems.
pub trait Ssp: Send + Sync {
    fn universe(&self) -> &Universe;

    /// Short human-readable label, e.g. the kind id.
    fn describe(&self) -> String;

    /// Membership of `s` in the solution family. Elements outside the
    /// universe yield `Error::ForeignElement`.
    fn accepts(&self, s: &Subset) -> Result<bool>;

    fn enumerate_solutions(&self, budget: u64) -> Result<SolutionFamily>;
}
