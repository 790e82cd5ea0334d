//! Shadow boundaries and the three ways a face behaves under `P + [-e, e]`.

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::vrep::{Face, VPolytope};
use crate::exact::{Rational, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Orientation {
    /// `e` lies in the direction space of the face.
    Parallel,
    /// A line in direction `e` meets the face in a single point.
    Transversal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShadowFace {
    pub face: Face,
    pub orientation: Orientation,
}

/// What becomes of a face `F` in the sum `P + [-e, e]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FaceSumKind {
    /// `F + z(e)` keeps the dimension of `F`.
    ParallelExtension,
    /// `F + z(e)` is a translate of `F`.
    Shift,
    /// `F + z(e) = F ⊕ z(e)`, one dimension higher.
    DirectSum,
}

fn tight_products(v: &VPolytope, face: &Face, e: &Vector) -> Vec<Rational> {
    face.tight
        .iter()
        .map(|&i| v.h().ineqs[i].normal.dot_unchecked(e))
        .collect()
}

/// Whether the line through a relative interior point of `face` in direction
/// `e` meets `P` only inside `face`.
///
/// That holds iff `e` is parallel to the face, or the tight facet normals have
/// products with `e` of both strict signs (so both `+e` and `-e` leave `P`
/// immediately).
pub fn in_shadow_boundary(v: &VPolytope, face: &Face, e: &Vector) -> bool {
    if face.is_parallel_to(e) {
        return true;
    }
    let prods = tight_products(v, face, e);
    prods.iter().any(Signed::is_positive) && prods.iter().any(Signed::is_negative)
}

/// All proper faces in the shadow boundary of `P` in direction `e`.
pub fn shadow_boundary(v: &VPolytope, e: &Vector) -> Vec<ShadowFace> {
    shadow_boundary_of(v, &v.faces(), e)
}

pub fn shadow_boundary_of(v: &VPolytope, faces: &[Face], e: &Vector) -> Vec<ShadowFace> {
    assert!(!e.is_zero(), "shadow boundary needs a nonzero direction");
    faces
        .iter()
        .filter(|f| in_shadow_boundary(v, f, e))
        .map(|f| ShadowFace {
            face: f.clone(),
            orientation: if f.is_parallel_to(e) {
                Orientation::Parallel
            } else {
                Orientation::Transversal
            },
        })
        .collect()
}

pub fn classify_face(v: &VPolytope, face: &Face, e: &Vector) -> FaceSumKind {
    if face.is_parallel_to(e) {
        FaceSumKind::ParallelExtension
    } else if in_shadow_boundary(v, face, e) {
        FaceSumKind::DirectSum
    } else {
        FaceSumKind::Shift
    }
}

/// Products of `e` with the tight facet normals are all zero.
pub fn orthogonal_to_tight(v: &VPolytope, face: &Face, e: &Vector) -> bool {
    tight_products(v, face, e).iter().all(Zero::is_zero)
}
