//! Exact Voronoi parallelotopes of lattices and their extensions by segments.
//!
//! A positive definite form `a` on `Z^d` defines the cell
//! `P(a) = {x : <p, x> <= a(p)}` over its facet normals. Adding a segment
//! `[-b e, b e]` keeps it a Voronoi parallelotope exactly when every facet
//! normal has product `0` or `±1` with `e`, and then the sum is the cell of
//! `a + b <e, ·>^2`. This crate computes all of those objects exactly and
//! checks that statement on concrete lattices.

pub mod cell;
pub mod error;
pub mod exact;
pub mod extension;
pub mod lattice;
pub mod off;
pub mod par;
pub mod polytope;

pub use cell::VoronoiCell;
pub use error::{ExactError, ExtensionError, LatticeError, PolytopeError};
pub use exact::{Matrix, Rational, Vector};
pub use lattice::{ContactVectorSet, LatticeVector, QuadForm};
pub use par::Strategy;
pub use polytope::{HPolytope, VPolytope};
