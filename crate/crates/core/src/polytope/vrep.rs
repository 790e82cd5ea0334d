use std::collections::{BTreeSet, VecDeque};

use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use super::dd::{self, Bitset};
use super::hrep::HPolytope;
use crate::error::PolytopeError;
use crate::exact::{canonical_span, Matrix, Rational, Vector};

/// Largest dimension for vertex enumeration unless configured otherwise.
pub const DEFAULT_VREP_CAP: usize = 5;

/// Exact vertex description of an [`HPolytope`], with the incidences of every
/// input inequality.
#[derive(Clone, Debug)]
pub struct VPolytope {
    h: HPolytope,
    vertices: Vec<Vector>,
    incidence: Vec<Bitset>,
    affine_dim: isize,
    facets: Vec<usize>,
}

/// A nonempty face, identified by its vertex set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Face {
    pub vertices: Vec<usize>,
    /// Facets (indices into the inequality list) containing the face.
    #[serde(rename = "tightSet")]
    pub tight: Vec<usize>,
    pub dim: usize,
    #[serde(rename = "directionSpace")]
    pub direction_space: Vec<Vector>,
}

impl Face {
    /// True when `e` lies in the linear space parallel to the face.
    pub fn is_parallel_to(&self, e: &Vector) -> bool {
        crate::exact::in_span(&self.direction_space, e)
    }
}

pub fn affine_dimension(points: &[&Vector]) -> isize {
    match points.split_first() {
        None => -1,
        Some((first, rest)) => {
            if rest.is_empty() {
                return 0;
            }
            let diffs: Vec<Vector> = rest.iter().map(|p| *p - *first).collect();
            Matrix::from_vectors(&diffs).unwrap().rank() as isize
        }
    }
}

impl VPolytope {
    pub fn h(&self) -> &HPolytope {
        &self.h
    }

    pub fn dim(&self) -> usize {
        self.h.dim
    }

    /// Vertices in lexicographic order.
    pub fn vertices(&self) -> &[Vector] {
        &self.vertices
    }

    /// Affine dimension of the polytope; -1 when empty.
    pub fn affine_dim(&self) -> isize {
        self.affine_dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim == self.h.dim as isize
    }

    /// Indices of inequalities that define facets, one per facet.
    pub fn facets(&self) -> &[usize] {
        &self.facets
    }

    /// Vertex indices on inequality `i`.
    pub fn incidence(&self, i: usize) -> Vec<usize> {
        self.incidence[i].iter().collect()
    }

    /// The irredundant inequalities, one per facet.
    pub fn facet_polytope(&self) -> HPolytope {
        HPolytope {
            dim: self.h.dim,
            ineqs: self.facets.iter().map(|&i| self.h.ineqs[i].clone()).collect(),
        }
    }

    pub fn vertex_set(&self, idx: &Bitset) -> Vec<&Vector> {
        idx.iter().map(|i| &self.vertices[i]).collect()
    }

    pub fn centroid_of(&self, idx: &[usize]) -> Vector {
        let mut c = Vector::zeros(self.dim());
        for &i in idx {
            c = &c + &self.vertices[i];
        }
        c.scale(&Rational::from_integer((idx.len() as i64).into()).recip())
    }

    pub fn face_from_vertices(&self, set: &Bitset) -> Face {
        let vertices: Vec<usize> = set.iter().collect();
        let pts: Vec<&Vector> = vertices.iter().map(|&i| &self.vertices[i]).collect();
        let dim = affine_dimension(&pts).max(0) as usize;
        let diffs: Vec<Vector> = pts.iter().skip(1).map(|p| *p - pts[0]).collect();
        let tight = self
            .facets
            .iter()
            .copied()
            .filter(|&f| self.incidence[f].is_superset(set))
            .collect();
        Face {
            vertices,
            tight,
            dim,
            direction_space: canonical_span(&diffs, self.dim()),
        }
    }

    /// Every nonempty proper face, ordered by decreasing dimension and then by
    /// vertex set.
    pub fn faces(&self) -> Vec<Face> {
        let n = self.vertices.len();
        let mut seen: BTreeSet<Bitset> = BTreeSet::new();
        let mut queue: VecDeque<Bitset> = VecDeque::new();
        for &f in &self.facets {
            if seen.insert(self.incidence[f].clone()) {
                queue.push_back(self.incidence[f].clone());
            }
        }
        while let Some(s) = queue.pop_front() {
            for &f in &self.facets {
                let t = s.and(&self.incidence[f]);
                if !t.is_empty() && t != s && seen.insert(t.clone()) {
                    queue.push_back(t);
                }
            }
        }
        let full = Bitset::from_indices(n, 0..n);
        let mut faces: Vec<Face> = seen
            .into_iter()
            .filter(|s| *s != full)
            .map(|s| self.face_from_vertices(&s))
            .collect();
        faces.sort_by(|a, b| b.dim.cmp(&a.dim).then_with(|| a.vertices.cmp(&b.vertices)));
        faces
    }

    /// Faces of dimension `dim - 2`, each the intersection of two facets.
    pub fn codim2_faces(&self) -> Vec<Face> {
        let target = self.affine_dim - 2;
        if target < 0 {
            return Vec::new();
        }
        let mut seen: BTreeSet<Bitset> = BTreeSet::new();
        for (k, &f) in self.facets.iter().enumerate() {
            for &g in &self.facets[k + 1..] {
                let s = self.incidence[f].and(&self.incidence[g]);
                if s.is_empty() || seen.contains(&s) {
                    continue;
                }
                if affine_dimension(&self.vertex_set(&s)) == target {
                    seen.insert(s);
                }
            }
        }
        seen.iter().map(|s| self.face_from_vertices(s)).collect()
    }

    /// Vertex lists compare equal iff the polytopes are equal.
    pub fn same_polytope(&self, other: &VPolytope) -> bool {
        self.vertices == other.vertices
    }
}

impl Serialize for VPolytope {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Doc<'a> {
            vertices: &'a [Vector],
            #[serde(rename = "facetIncidence")]
            facet_incidence: Vec<Vec<usize>>,
        }
        Doc {
            vertices: &self.vertices,
            facet_incidence: (0..self.h.ineqs.len()).map(|i| self.incidence(i)).collect(),
        }
        .serialize(s)
    }
}

/// Vertex enumeration with the default dimension cap.
pub fn enumerate_vertices(h: &HPolytope) -> Result<VPolytope, PolytopeError> {
    enumerate_vertices_capped(h, DEFAULT_VREP_CAP)
}

/// Exact vertex enumeration by double description on the homogenized cone
/// `{(t, x) : t >= 0, t s_i - <n_i, x> >= 0}`.
pub fn enumerate_vertices_capped(h: &HPolytope, cap: usize) -> Result<VPolytope, PolytopeError> {
    let d = h.dim;
    if d > cap {
        return Err(PolytopeError::DimensionCap { dim: d, cap });
    }
    let mut rows = Vec::with_capacity(h.ineqs.len() + 1);
    let mut t_row = vec![num_bigint::BigInt::zero(); d + 1];
    t_row[0] = 1.into();
    rows.push(t_row);
    rows.extend(h.ineqs.iter().map(|q| q.homogenized_row()));
    let rays = dd::extreme_rays(&rows, d + 1).ok_or(PolytopeError::UnboundedCell)?;

    let mut vertices = Vec::with_capacity(rays.len());
    for r in rays {
        if !r[0].is_positive() {
            return Err(PolytopeError::UnboundedCell);
        }
        let t = Rational::from_integer(r[0].clone());
        vertices.push(Vector(
            r[1..].iter().map(|x| Rational::from_integer(x.clone()) / &t).collect(),
        ));
    }
    vertices.sort();
    vertices.dedup();
    Ok(from_vertices(h.clone(), vertices))
}

fn from_vertices(h: HPolytope, vertices: Vec<Vector>) -> VPolytope {
    let n = vertices.len();
    let incidence: Vec<Bitset> = h
        .ineqs
        .iter()
        .map(|q| Bitset::from_indices(n, (0..n).filter(|&j| q.value(&vertices[j]) == q.support)))
        .collect();
    let refs: Vec<&Vector> = vertices.iter().collect();
    let affine_dim = affine_dimension(&refs);
    let mut facets = Vec::new();
    let mut seen: BTreeSet<&Bitset> = BTreeSet::new();
    for (i, inc) in incidence.iter().enumerate() {
        if inc.is_empty() || seen.contains(inc) {
            continue;
        }
        let pts: Vec<&Vector> = inc.iter().map(|j| &vertices[j]).collect();
        if affine_dimension(&pts) == affine_dim - 1 {
            seen.insert(inc);
            facets.push(i);
        }
    }
    VPolytope {
        h,
        vertices,
        incidence,
        affine_dim,
        facets,
    }
}

/// `max <q, v>` over the vertices.
pub fn support_value(v: &VPolytope, q: &Vector) -> Result<Rational, PolytopeError> {
    if q.dim() != v.dim() {
        return Err(PolytopeError::Exact(crate::error::ExactError::DimensionMismatch {
            expected: v.dim(),
            found: q.dim(),
        }));
    }
    v.vertices
        .iter()
        .map(|x| q.dot_unchecked(x))
        .max()
        .ok_or(PolytopeError::Empty)
}

/// The face `P ∩ {<p, x> = supp}`; `None` when the hyperplane misses `P`.
pub fn contact_face(v: &VPolytope, p: &Vector, supp: &Rational) -> Result<Option<Face>, PolytopeError> {
    let h = support_value(v, p)?;
    if h < *supp {
        return Ok(None);
    }
    if h > *supp {
        return Err(PolytopeError::NotSupporting {
            normal: p.to_string(),
            support: crate::exact::format_rational(supp),
        });
    }
    let n = v.vertices.len();
    let set = Bitset::from_indices(n, (0..n).filter(|&j| p.dot_unchecked(&v.vertices[j]) == *supp));
    Ok(Some(v.face_from_vertices(&set)))
}

pub fn codim2_faces(v: &VPolytope) -> Vec<Face> {
    v.codim2_faces()
}
