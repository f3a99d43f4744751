use thiserror::Error;

use crate::element::{ElementId, ElementSet};

#[derive(Debug, Error)]
pub enum Error {
    #[error("element `{0}` is not in the ground set")]
    NotInGround(ElementId),

    #[error("set {0} is not contained in the ground set")]
    NotInGroundSet(ElementSet),

    #[error("set {0} is not independent")]
    DependentInput(ElementSet),

    #[error("{set} + {element} is independent; no circuit to extract")]
    NoCircuit { set: ElementSet, element: ElementId },

    #[error("{0} is not a basis")]
    NotABasis(ElementSet),

    #[error("classes do not partition the target set: {0}")]
    NotAPartition(String),

    #[error("invalid cover state: {0}")]
    InvalidCover(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// An internal certificate failed to validate. Indicates a bug, not bad input.
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}

impl Error {
    /// True for failures of internal certificates rather than of the inputs.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::InvariantViolation(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
