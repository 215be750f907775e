//! Rational simplicial complexes: denominators, Farey mediants, blow-ups,
//! weighted abstract complexes, stellar scripts and germ trees.
//!
//! Everything is exact over `Q`.

pub mod complex;
pub mod germ;
pub mod linalg;
pub mod rational;
pub mod stellar;
pub mod weighted;

use thiserror::Error;

pub use complex::{GeometricComplex, Simplex};
pub use germ::germ_tree;
pub use rational::{farey_mediant, format_rational, parse_rational, RationalPoint};
pub use stellar::{apply_stellar_script, StellarError, StellarOp, StellarScript, StellarStep, StepJson};
pub use weighted::{Realization, VertexSet, WeightedComplex, WeightedComplexJson};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("the two points coincide")]
    EqualPoints,
    #[error("{0} is not a rational number")]
    BadRational(String),
    #[error("{0} lies outside the unit cube")]
    OutOfUnitCube(String),
    #[error("simplex has no vertices")]
    EmptySimplex,
    #[error("vertices of {0} are affinely dependent")]
    NotAffinelyIndependent(String),
    #[error("{0} is not in the support of the complex")]
    PointOutsideSupport(String),
    #[error("{{{0},{1}}} is not an edge of the complex")]
    EdgeNotPresent(String, String),
    #[error("vertex name {0} is already taken")]
    NameCollision(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("vertex {0} needs a weight >= 1")]
    BadWeight(String),
    #[error("set of {0} vertices is too large")]
    SetTooLarge(usize),
    #[error("weight overflow")]
    WeightOverflow,
    #[error("{0} is not a maximal set")]
    NotMaximal(String),
    #[error("{0} is not in the complex")]
    NotPresent(String),
    #[error("no cell equals the point {0}")]
    MissingRootCell(String),
    #[error("open cells {0} and {1} intersect")]
    NotPairwiseDisjoint(String, String),
    #[error("closure of {cell} contains {count} cells of dimension {dim}, expected exactly one")]
    ConditionVViolated { cell: String, dim: usize, count: usize },
    #[error("the incidence graph of the cells is not a tree")]
    NotATree,
}
