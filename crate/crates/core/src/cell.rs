//! A Voronoi cell bundled with the data it was built from.

use serde::Serialize;

use crate::error::PolytopeError;
use crate::exact::{int, Vector};
use crate::lattice::{self, ContactVectorSet, LatticeVector, QuadForm};
use crate::par::Strategy;
use crate::polytope::{self, enumerate_vertices_capped, HPolytope, Inequality, VPolytope};

#[derive(Clone, Debug)]
pub struct VoronoiCell {
    pub form: QuadForm,
    pub contacts: ContactVectorSet,
    /// Facet normals, sorted.
    pub normals: Vec<LatticeVector>,
    pub h: HPolytope,
    /// Present when the dimension is within the vertex enumeration cap.
    pub v: Option<VPolytope>,
    pub vcap: usize,
}

impl VoronoiCell {
    /// Full pipeline: parity-class minima, facet normals, H-representation and
    /// (when `d <= vcap`) the vertices.
    pub fn new(form: QuadForm, vcap: usize) -> Result<Self, PolytopeError> {
        Self::with_strategy(form, vcap, Strategy::default())
    }

    pub fn with_strategy(form: QuadForm, vcap: usize, strategy: Strategy) -> Result<Self, PolytopeError> {
        let contacts =
            lattice::coset_minima_with(&form, lattice::DEFAULT_ENUMERATION_CAP, strategy)?;
        let normals = contacts.facet_normals();
        let h = polytope::build_cell(&form, &normals)?;
        let v = if form.dim() <= vcap {
            Some(enumerate_vertices_capped(&h, vcap)?)
        } else {
            None
        };
        Ok(VoronoiCell {
            form,
            contacts,
            normals,
            h,
            v,
            vcap,
        })
    }

    pub fn dim(&self) -> usize {
        self.form.dim()
    }

    pub fn vertices(&self) -> Result<&VPolytope, PolytopeError> {
        self.v.as_ref().ok_or(PolytopeError::DimensionCap {
            dim: self.dim(),
            cap: self.vcap,
        })
    }

    pub fn summary(&self) -> CellSummary {
        let belt_lengths = self
            .v
            .as_ref()
            .map(|v| polytope::belts(v).iter().map(|b| b.len()).collect());
        CellSummary {
            dim: self.dim(),
            facets: self.normals.len(),
            contacts: self.contacts.contact_vectors().len(),
            vertices: self.v.as_ref().map(|v| v.vertices().len()),
            belt_lengths,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellSummary {
    pub dim: usize,
    pub facets: usize,
    pub contacts: usize,
    pub vertices: Option<usize>,
    #[serde(rename = "beltLengths")]
    pub belt_lengths: Option<Vec<usize>>,
}

/// Whether `P` and `P + 2Ap` meet in exactly the facet `F(p)`.
pub fn adjacency_check(cell: &VoronoiCell, p: &LatticeVector) -> Result<bool, PolytopeError> {
    let v = cell.vertices()?;
    if !cell.contacts.is_facet_normal(p) {
        return Err(PolytopeError::NotFacetNormal(p.to_string()));
    }
    let pv = p.to_vector();
    let supp = cell.form.eval(p)?;
    let face = polytope::contact_face(v, &pv, &supp)?
        .ok_or_else(|| PolytopeError::NotFacetNormal(p.to_string()))?;
    if face.dim + 1 != cell.dim() {
        return Err(PolytopeError::NotFacetNormal(p.to_string()));
    }
    let shift = cell.form.apply(p)?.scale(&int(2));
    let mut ineqs = cell.h.ineqs.clone();
    ineqs.extend(cell.h.ineqs.iter().map(|q| {
        Inequality::new(q.normal.clone(), &q.support + q.normal.dot_unchecked(&shift))
    }));
    let both = HPolytope::new(cell.dim(), ineqs)?;
    let meet = enumerate_vertices_capped(&both, cell.dim())?;
    let mut facet: Vec<Vector> = face.vertices.iter().map(|&i| v.vertices()[i].clone()).collect();
    facet.sort();
    Ok(meet.vertices() == facet.as_slice())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Matrix;
    use crate::lattice::catalog;
    use crate::polytope::DEFAULT_VREP_CAP;

    fn lv(xs: &[i64]) -> LatticeVector {
        LatticeVector(xs.to_vec())
    }

    #[test]
    fn adjacency_examples() {
        let sq = VoronoiCell::new(QuadForm::new(Matrix::identity(2)).unwrap(), DEFAULT_VREP_CAP).unwrap();
        assert_eq!(adjacency_check(&sq, &lv(&[1, 0])), Ok(true));
        assert!(matches!(
            adjacency_check(&sq, &lv(&[1, 1])),
            Err(PolytopeError::NotFacetNormal(_))
        ));
        let hex = VoronoiCell::new(catalog("An", Some(2)).unwrap(), DEFAULT_VREP_CAP).unwrap();
        assert_eq!(adjacency_check(&hex, &lv(&[1, 0])), Ok(true));
    }

    #[test]
    fn every_facet_normal_is_adjacent() {
        for (name, n) in [("An", Some(3)), ("Dn", Some(4)), ("Zn", Some(3))] {
            let c = VoronoiCell::new(catalog(name, n).unwrap(), DEFAULT_VREP_CAP).unwrap();
            for p in &c.normals {
                assert_eq!(adjacency_check(&c, p), Ok(true), "{name} {p}");
            }
        }
    }

    #[test]
    fn summaries() {
        let hex = VoronoiCell::new(catalog("An", Some(2)).unwrap(), DEFAULT_VREP_CAP).unwrap();
        let s = hex.summary();
        assert_eq!((s.facets, s.contacts, s.vertices), (6, 6, Some(6)));
        assert_eq!(s.belt_lengths, Some(vec![6]));
        let cube = VoronoiCell::new(catalog("Zn", Some(3)).unwrap(), DEFAULT_VREP_CAP).unwrap();
        let s = cube.summary();
        assert_eq!((s.facets, s.vertices), (6, Some(8)));
        assert_eq!(s.belt_lengths, Some(vec![4, 4, 4]));
        let e6s = VoronoiCell::new(catalog("E6*", None).unwrap(), DEFAULT_VREP_CAP).unwrap();
        assert!(e6s.v.is_none());
        assert!(e6s.summary().vertices.is_none());
    }
}
