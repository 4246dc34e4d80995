use thiserror::Error;

use crate::algebra::{AxiomId, ElementId};

#[derive(Debug, Error)]
pub enum DbaError {
    #[error("carrier must be non-empty")]
    EmptyCarrier,

    #[error("table `{table}` has wrong shape: expected {expected}, found {found}")]
    Shape {
        table: &'static str,
        expected: String,
        found: String,
    },

    #[error("closure violation at {cell}: {value} is not an element of a carrier of size {size}")]
    Closure {
        cell: String,
        value: usize,
        size: usize,
    },

    #[error("axiom ({axiom}) fails at {witness:?}: {lhs} != {rhs}")]
    NotADba {
        axiom: AxiomId,
        witness: Vec<ElementId>,
        lhs: ElementId,
        rhs: ElementId,
    },

    #[error("not a Boolean algebra: {law} fails at {witness:?}")]
    NotBoolean {
        law: &'static str,
        witness: Vec<ElementId>,
    },

    #[error("classification error: {0}")]
    Classification(String),

    #[error("contract violation: {0}")]
    Contract(String),

    /// A computed object failed a property the theory guarantees; this points
    /// at a bug in a checker, never at bad user input.
    #[error("internal inconsistency: {0}")]
    Internal(String),

    #[error("enumeration size {size} exceeds the certified cap of {cap}")]
    EnumerationCap { size: usize, cap: usize },

    #[error("unknown catalog algebra `{0}`")]
    UnknownCatalogName(String),

    #[error("malformed algebra file: {0}")]
    Parse(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = DbaError> = std::result::Result<T, E>;
