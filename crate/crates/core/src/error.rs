use std::fmt;

use crate::subset::Subset;

/// Which lattice-of-flats axiom a flat collection failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomWitness {
    /// Two flats whose intersection is not a flat.
    Intersection { first: Subset, second: Subset },
    /// A flat and an element outside it that is covered by `covers` minimal
    /// flats above the flat (must be exactly one).
    Partition {
        flat: Subset,
        element: usize,
        covers: usize,
    },
}

impl fmt::Display for AxiomWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomWitness::Intersection { first, second } => write!(
                f,
                "axiom (1): {} ∩ {} = {} is not a flat",
                first,
                second,
                first.intersection(*second)
            ),
            AxiomWitness::Partition {
                flat,
                element,
                covers,
            } => write!(
                f,
                "axiom (2): element {element} lies in {covers} minimal flats strictly above {flat} (expected exactly 1)"
            ),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("lattice-of-flats violation: {0}")]
    AxiomViolation(AxiomWitness),

    #[error("the full ground set is missing from the flats")]
    MissingTop,

    #[error("ground set of size {0} exceeds the 64-element bitset cap")]
    GroundTooLarge(usize),

    #[error("element {element} is outside a ground set of size {size}")]
    ElementOutOfRange { element: usize, size: usize },

    #[error("{0} is not a flat of this matroid")]
    NotAFlat(Subset),

    #[error("matroid has loops {0}; Chow-ring operations require a loopless matroid")]
    Loopy(Subset),

    #[error("matroid has an empty ground set")]
    EmptyGroundSet,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("refusing to {what}: size {size} exceeds the configured cap {cap}")]
    GuardExceeded {
        what: &'static str,
        size: u128,
        cap: u128,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("non-integral result where an integer was required: {0}")]
    NonIntegral(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
