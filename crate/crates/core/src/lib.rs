//! A workbench for finite double Boolean algebras: operation tables, the
//! defining identities, skeletons, congruence lattices, glued sums and
//! exhaustive enumeration of small algebras.

pub mod algebra;
pub mod boolean;
pub mod catalog;
pub mod cli;
pub mod congruence;
pub mod construct;
pub mod enumerate;
pub mod error;
pub mod format;
pub mod ideals;
pub mod iso;
pub mod lattice;
pub mod report;
pub mod skeleton;

pub use algebra::{AxiomId, AxiomViolation, ElementId, FiniteAlgebra, FiniteDba, VerifiedDba};
pub use boolean::{FiniteBooleanAlgebra, VerifiedBooleanAlgebra};
pub use error::{DbaError, Result};
