//! Domain error taxonomy. Every variant has a stable machine-readable kind
//! string so external harnesses can assert on error categories.

use serde::Serialize;
use thiserror::Error;

/// A single invariant violation found while validating ambient data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Violation {
    /// The named functional is not strictly positive on the given cone generator.
    NonPositivePairing { functional: String, generator: usize },
    /// Cone generators are linearly dependent over the rationals.
    DependentGenerators,
    /// Structural problem (wrong lengths, zero or duplicate generators, ...).
    Malformed { detail: String },
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("invalid ambient data: {0:?}")]
    InvalidAmbient(Vec<Violation>),
    #[error("invalid stability parameter: {0:?}")]
    InvalidParameter(Vec<Violation>),
    #[error("the zero class has no interval")]
    ZeroClass,
    #[error("slope of the zero object is undefined")]
    ZeroObject,
    #[error("charge value lies outside the partially completed lower half-plane")]
    NotInLowerHalf,
    #[error("subobject poset is not a lattice: {0}")]
    NotALattice(String),
    #[error("non-monotone class assignment between {0} and {1}")]
    NonMonotone(String, String),
    #[error("class assignment fails modularity on the pair ({0}, {1})")]
    NonModular(String, String),
    #[error("node {0} violates purity (nonzero node with zero curve class)")]
    ImpureNode(String),
    #[error("bottom or top node is malformed: {0}")]
    BadBottomOrTop(String),
    #[error("saturation flag on node {0} disagrees with quotient purity")]
    SaturationMismatch(String),
    #[error("model is not pure")]
    NotPure,
    #[error("maximal-slope subobjects have no unique maximum; model is not abelian-categorical")]
    NonUniqueMaximalDestabilizer,
    #[error("model is not semistable")]
    NotSemistable,
    #[error("central charge has zero imaginary part")]
    ZeroImaginaryPart,
    #[error("model charge does not match the supplied charge value")]
    ChargeMismatch,
    #[error("parameter box is empty or malformed: {0}")]
    EmptyBox(String),
    #[error("wall datum violates 0 < xi < beta0")]
    BadWallDatum,
    #[error("p_zero does not lie on a unique separating wall: {0}")]
    NotOnWall(String),
    #[error("p_minus/p_plus are not in adjacent chambers: {0}")]
    NotAdjacent(String),
    #[error("malformed input: {0}")]
    Malformed(String),
}

impl Error {
    /// Stable identifier for machine-readable error output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidAmbient(_) => "InvalidAmbient",
            Error::InvalidParameter(_) => "InvalidParameter",
            Error::ZeroClass => "ZeroClass",
            Error::ZeroObject => "ZeroObject",
            Error::NotInLowerHalf => "NotInLowerHalf",
            Error::NotALattice(_) => "NotALattice",
            Error::NonMonotone(_, _) => "NonMonotone",
            Error::NonModular(_, _) => "NonModular",
            Error::ImpureNode(_) => "ImpureNode",
            Error::BadBottomOrTop(_) => "BadBottomOrTop",
            Error::SaturationMismatch(_) => "SaturationMismatch",
            Error::NotPure => "NotPure",
            Error::NonUniqueMaximalDestabilizer => "NonUniqueMaximalDestabilizer",
            Error::NotSemistable => "NotSemistable",
            Error::ZeroImaginaryPart => "ZeroImaginaryPart",
            Error::ChargeMismatch => "ChargeMismatch",
            Error::EmptyBox(_) => "EmptyBox",
            Error::BadWallDatum => "BadWallDatum",
            Error::NotOnWall(_) => "NotOnWall",
            Error::NotAdjacent(_) => "NotAdjacent",
            Error::Malformed(_) => "Malformed",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
