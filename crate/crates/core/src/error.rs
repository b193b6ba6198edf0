use thiserror::Error;

use crate::basis::Space;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("space mismatch: {left} vs {right}")]
    SpaceMismatch { left: Space, right: Space },
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("not a permutation: {0:?}")]
    NotAPermutation(Vec<usize>),
    #[error("element is not homogeneous")]
    Inhomogeneous,
    #[error("declared degree {declared} but computed {computed}")]
    DegreeMismatch { declared: i32, computed: i32 },
    #[error("dimension {0} out of range 1..={cap}", cap = crate::MAX_DIM)]
    DimensionOutOfRange(usize),
    #[error("algebra mismatch: {left} vs {right}")]
    AlgebraMismatch { left: String, right: String },
    #[error("{0} is curved")]
    NotFlat(String),
    #[error("{0} has no unit")]
    NoUnit(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("pairing arguments must lie in V* and V: {0}")]
    OutsidePairing(String),
    #[error("bound overflow: {0}")]
    BoundOverflow(String),
    #[error("degree {degree} at weight {weight} lies on the truncation boundary")]
    WindowBoundary { weight: u32, degree: i32 },
    #[error("not a chain map at weight {weight}, degree {degree}")]
    NotAChainMap { weight: u32, degree: i32 },
    #[error("{mono} escapes the basis at weight {weight}, degree {degree}")]
    OutsideBasis { weight: u32, degree: i32, mono: String },
}

pub type Result<T> = std::result::Result<T, Error>;
