//! Finite subordination algebras and their companions: canonical extensions of posets, slanted
//! algebras, correspondence checks, the discrete duality with subordination spaces, and the
//! input/output logic that reads norms as subordination relations.

pub mod algebras;
pub mod bits;
pub mod completion;
pub mod duality;
pub mod harness;
pub mod iologic;
pub mod json;
pub mod order;
pub mod slanted;
pub mod subordination;
pub mod syntax;

pub use bits::{ElementSet, Relation};
pub use order::{Carrier, FinLattice, FinPoset, FreeBooleanAlgebra, NegationReport, OrderError};
