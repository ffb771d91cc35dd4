//! Exact computation of homological invariants of bound quiver algebras:
//! normal-path bases, quiver representations, minimal projective
//! resolutions, simple-subset torsion radicals and radical layer lengths,
//! relative dimensions for finite-type subcategories, and the resulting
//! upper bounds on extension and derived dimension.

pub mod algebra;
pub mod bounds;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod homology;
pub mod linalg;
pub mod quiver;
pub mod relative;
pub mod rep;
pub mod torsion;

pub use algebra::Algebra;
pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use quiver::{parse_algebra, PathWord, Presentation, Quiver, Relation};
