//! Subset search problems (SSPs), the solution-preserving reductions between
//! them, and the robust min-max variants built on top, all checked by
//! exhaustive enumeration on small instances.
//!
//! An SSP instance has a finite universe and a family of solution subsets.
//! A reduction maps instances and embeds universes so that solution families
//! correspond exactly on the embedded image.

pub mod acceptance;
mod bits;
pub mod catalog;
pub mod element;
pub mod error;
pub mod family;
pub mod format;
pub mod game;
pub mod generate;
pub mod lift;
pub mod reduction;
mod search;
pub mod ssp;
pub mod variant;

pub use catalog::{Instance, Payload, ProblemKind};
pub use element::{ElementId, Lit, Subset, Universe};
pub use error::{Error, Result};
pub use family::{SolutionFamily, DEFAULT_BUDGET};
pub use ssp::Ssp;
pub use variant::{Variant, VariantKind};
