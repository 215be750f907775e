//! Tree-indexed lattice-ordered groups and the machinery around them.
//!
//! * [`forest`]: rooted forests, AHU canonical forms and isomorphism.
//! * [`tlex`]: the tree-lexicographic groups `G(F)`.
//! * [`parasemifield`]: the additively idempotent parasemifield view,
//!   order-units and exponent cones.
//! * [`reconstruct`]: recovering the forest from an opaque presentation.
//! * [`geometry`]: rational simplicial complexes, Farey blow-ups and
//!   stellar scripts.
//! * [`pwl`]: integral piecewise-linear functions on `[0,1]^n`.
//! * [`expr`]: a small expression language over elements.
//! * [`fuzz`]: seeded property suites.

pub mod expr;
pub mod forest;
pub mod fuzz;
pub mod geometry;
pub mod parasemifield;
pub mod pwl;
pub mod reconstruct;
pub mod tlex;

pub use forest::{ForestError, ForestJson, RootedForest, VertexId};
pub use tlex::{TlexElement, TlexError};
