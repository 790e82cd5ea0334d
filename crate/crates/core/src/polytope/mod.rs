//! Exact H/V polytope engine.

pub mod belts;
pub mod dd;
pub mod hrep;
pub mod shadow;
pub mod vrep;

pub use belts::{
    belts, irreducibility_graph, is_parallelotope, Belt, IrreducibilityGraph, ParallelotopeFailure,
    ParallelotopeVerdict,
};
pub use hrep::{build_cell, positively_spanning, HPolytope, Inequality};
pub use shadow::{classify_face, shadow_boundary, FaceSumKind, Orientation, ShadowFace};
pub use vrep::{
    codim2_faces, contact_face, enumerate_vertices, enumerate_vertices_capped, support_value, Face,
    VPolytope, DEFAULT_VREP_CAP,
};
