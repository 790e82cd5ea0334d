//! Belts, the parallelotope test, and the 6-belt facet graph.
//!
//! A belt collects every facet that contains a codimension-2 face with a given
//! direction space. Grouping by direction space (rather than by translates of
//! one ridge) puts all vertices of a polygon in one group, so a square has a
//! single 4-belt and a hexagon a single 6-belt.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::vrep::{Face, VPolytope};
use crate::error::PolytopeError;
use crate::exact::{Matrix, Rational, Vector};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Belt {
    #[serde(rename = "directionSpace")]
    pub direction_space: Vec<Vector>,
    /// Facet indices in cyclic order around the direction space.
    pub facets: Vec<usize>,
    /// Codimension-2 faces of the group, as indices into
    /// [`VPolytope::codim2_faces`].
    pub ridges: Vec<usize>,
}

impl Belt {
    pub fn len(&self) -> usize {
        self.facets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }
}

/// Basis of the orthogonal complement of `span(basis)` in `R^dim`.
fn orthogonal_complement(basis: &[Vector], dim: usize) -> Vec<Vector> {
    if basis.is_empty() {
        return (0..dim)
            .map(|i| {
                let mut v = Vector::zeros(dim);
                v.0[i] = Rational::from_integer(1.into());
                v
            })
            .collect();
    }
    Matrix::from_vectors(basis).unwrap().null_space()
}

fn half(x: &Rational, y: &Rational) -> u8 {
    if y.is_positive() || (y.is_zero() && x.is_positive()) {
        0
    } else {
        1
    }
}

/// Counter-clockwise angular order of planar vectors, starting at the
/// positive x axis. Uses only signs of exact cross products.
pub(crate) fn angle_cmp(a: &(Rational, Rational), b: &(Rational, Rational)) -> Ordering {
    let ha = half(&a.0, &a.1);
    let hb = half(&b.0, &b.1);
    ha.cmp(&hb).then_with(|| {
        let cross = &a.0 * &b.1 - &a.1 * &b.0;
        if cross.is_positive() {
            Ordering::Less
        } else if cross.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    })
}

/// Belts grouped from precomputed ridges.
pub fn belts_from_ridges(v: &VPolytope, ridges: &[Face]) -> Vec<Belt> {
    let mut groups: BTreeMap<Vec<Vector>, Vec<usize>> = BTreeMap::new();
    for (i, r) in ridges.iter().enumerate() {
        groups.entry(r.direction_space.clone()).or_default().push(i);
    }
    groups
        .into_iter()
        .map(|(space, members)| {
            let mut facets: Vec<usize> = members
                .iter()
                .flat_map(|&i| ridges[i].tight.iter().copied())
                .collect();
            facets.sort_unstable();
            facets.dedup();
            let plane = orthogonal_complement(&space, v.dim());
            let mut keyed: Vec<((Rational, Rational), usize)> = facets
                .iter()
                .map(|&f| {
                    let n = &v.h().ineqs[f].normal;
                    let x = n.dot_unchecked(&plane[0]);
                    let y = plane.get(1).map_or_else(Rational::zero, |u| n.dot_unchecked(u));
                    ((x, y), f)
                })
                .collect();
            keyed.sort_by(|a, b| angle_cmp(&a.0, &b.0).then(a.1.cmp(&b.1)));
            Belt {
                direction_space: space,
                facets: keyed.into_iter().map(|(_, f)| f).collect(),
                ridges: members,
            }
        })
        .collect()
}

pub fn belts(v: &VPolytope) -> Vec<Belt> {
    if v.affine_dim() < 2 {
        return Vec::new();
    }
    belts_from_ridges(v, &v.codim2_faces())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum ParallelotopeFailure {
    NotFullDimensional,
    /// The reflection of this vertex through the vertex centroid is missing.
    CentralSymmetry { vertex: Vector },
    /// The facet on this inequality is not symmetric about its own centroid.
    FacetSymmetry { facet: usize },
    /// A belt whose length is neither 4 nor 6.
    Belt {
        #[serde(rename = "beltIndex")]
        belt_index: usize,
        length: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParallelotopeVerdict {
    pub ok: bool,
    /// Every violated condition; empty iff `ok`.
    pub failures: Vec<ParallelotopeFailure>,
}

impl ParallelotopeVerdict {
    pub fn failure(&self) -> Option<&ParallelotopeFailure> {
        self.failures.first()
    }

    pub fn belt_failure(&self) -> Option<(usize, usize)> {
        self.failures.iter().find_map(|f| match f {
            ParallelotopeFailure::Belt { belt_index, length } => Some((*belt_index, *length)),
            _ => None,
        })
    }
}

fn symmetric_about(points: &[&Vector], center: &Vector) -> bool {
    let mut sorted: Vec<&Vector> = points.to_vec();
    sorted.sort();
    let twice = center.scale(&Rational::from_integer(2.into()));
    points.iter().all(|p| {
        let q = &twice - *p;
        sorted.binary_search(&&q).is_ok()
    })
}

/// Venkov's criterion: central symmetry of the polytope and of each facet,
/// and every belt of length 4 or 6. All violations are collected.
pub fn is_parallelotope(v: &VPolytope) -> ParallelotopeVerdict {
    is_parallelotope_with_belts(v, &belts(v))
}

pub fn is_parallelotope_with_belts(v: &VPolytope, belts: &[Belt]) -> ParallelotopeVerdict {
    let mut failures = Vec::new();
    if !v.is_full_dimensional() {
        failures.push(ParallelotopeFailure::NotFullDimensional);
        return ParallelotopeVerdict { ok: false, failures };
    }
    let all: Vec<usize> = (0..v.vertices().len()).collect();
    let center = v.centroid_of(&all);
    let twice = center.scale(&Rational::from_integer(2.into()));
    if let Some(bad) = v
        .vertices()
        .iter()
        .find(|x| v.vertices().binary_search(&(&twice - *x)).is_err())
    {
        failures.push(ParallelotopeFailure::CentralSymmetry { vertex: bad.clone() });
    }
    for (i, b) in belts.iter().enumerate() {
        if b.len() != 4 && b.len() != 6 {
            failures.push(ParallelotopeFailure::Belt {
                belt_index: i,
                length: b.len(),
            });
        }
    }
    for &f in v.facets() {
        let idx = v.incidence(f);
        let pts: Vec<&Vector> = idx.iter().map(|&j| &v.vertices()[j]).collect();
        if !symmetric_about(&pts, &v.centroid_of(&idx)) {
            failures.push(ParallelotopeFailure::FacetSymmetry { facet: f });
        }
    }
    ParallelotopeVerdict {
        ok: failures.is_empty(),
        failures,
    }
}

/// Graph on antipodal facet pairs; two pairs are joined when one of their
/// facets share a codimension-2 face lying in a 6-belt.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IrreducibilityGraph {
    /// Each node is `(facet, antipodal facet)` with the smaller index first.
    pub nodes: Vec<(usize, usize)>,
    pub edges: Vec<(usize, usize)>,
    pub connected: bool,
}

/// Antipode of every facet through the vertex centroid.
pub(crate) fn antipodes(v: &VPolytope) -> Result<BTreeMap<usize, usize>, PolytopeError> {
    let all: Vec<usize> = (0..v.vertices().len()).collect();
    let twice = v.centroid_of(&all).scale(&Rational::from_integer(2.into()));
    let key = |f: usize| -> Vec<usize> { v.incidence(f) };
    let by_set: BTreeMap<Vec<usize>, usize> = v.facets().iter().map(|&f| (key(f), f)).collect();
    let mut out = BTreeMap::new();
    for &f in v.facets() {
        let mut reflected: Vec<usize> = Vec::new();
        for j in v.incidence(f) {
            let q = &twice - &v.vertices()[j];
            let k = v
                .vertices()
                .binary_search(&q)
                .map_err(|_| PolytopeError::NotParallelotope)?;
            reflected.push(k);
        }
        reflected.sort_unstable();
        let g = by_set.get(&reflected).ok_or(PolytopeError::NotParallelotope)?;
        out.insert(f, *g);
    }
    Ok(out)
}

pub fn irreducibility_graph(v: &VPolytope) -> Result<IrreducibilityGraph, PolytopeError> {
    let ridges = v.codim2_faces();
    let belts = belts_from_ridges(v, &ridges);
    if !is_parallelotope_with_belts(v, &belts).ok {
        return Err(PolytopeError::NotParallelotope);
    }
    let anti = antipodes(v)?;
    let mut nodes: Vec<(usize, usize)> = anti
        .iter()
        .map(|(&f, &g)| (f.min(g), f.max(g)))
        .collect();
    nodes.sort_unstable();
    nodes.dedup();
    let node_of = |f: usize| -> usize {
        let g = anti[&f];
        nodes.binary_search(&(f.min(g), f.max(g))).unwrap()
    };
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for b in belts.iter().filter(|b| b.len() == 6) {
        for &r in &b.ridges {
            let t = &ridges[r].tight;
            for (i, &f) in t.iter().enumerate() {
                for &g in &t[i + 1..] {
                    let (a, c) = (node_of(f), node_of(g));
                    if a != c {
                        edges.push((a.min(c), a.max(c)));
                    }
                }
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();

    // Union-find over pair nodes.
    let mut parent: Vec<usize> = (0..nodes.len()).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut y = x;
        while parent[y] != r {
            let next = parent[y];
            parent[y] = r;
            y = next;
        }
        r
    }
    for &(a, b) in &edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra] = rb;
    }
    let roots = (0..nodes.len())
        .map(|x| find(&mut parent, x))
        .collect::<std::collections::BTreeSet<_>>();
    Ok(IrreducibilityGraph {
        connected: roots.len() <= 1,
        nodes,
        edges,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, Vector};
    use crate::lattice::{catalog, coset_minima};
    use crate::polytope::{build_cell, enumerate_vertices, HPolytope, Inequality};

    fn cell(name: &str, n: Option<usize>) -> VPolytope {
        let f = catalog(name, n).unwrap();
        let normals = coset_minima(&f).unwrap().facet_normals();
        enumerate_vertices(&build_cell(&f, &normals).unwrap()).unwrap()
    }

    /// Regular-ish octagon with integer data: |x|,|y| <= 2, |x±y| <= 3.
    fn octagon() -> VPolytope {
        let ineqs = [[1, 0, 2], [-1, 0, 2], [0, 1, 2], [0, -1, 2], [1, 1, 3], [-1, -1, 3], [1, -1, 3], [-1, 1, 3]]
            .iter()
            .map(|r| Inequality::new(Vector::from_ints(&r[..2]), int(r[2])))
            .collect();
        enumerate_vertices(&HPolytope::new(2, ineqs).unwrap()).unwrap()
    }

    #[test]
    fn belt_examples() {
        let sq = cell("Zn", Some(2));
        let b = belts(&sq);
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].len(), 4);
        let hex = cell("An", Some(2));
        assert_eq!(belts(&hex).iter().map(Belt::len).collect::<Vec<_>>(), vec![6]);
        let cube = cell("Zn", Some(3));
        assert_eq!(belts(&cube).iter().map(Belt::len).collect::<Vec<_>>(), vec![4, 4, 4]);
    }

    #[test]
    fn belt_order_is_cyclic() {
        let hex = cell("An", Some(2));
        let b = &belts(&hex)[0];
        // Consecutive facets in the order share a vertex.
        for i in 0..b.len() {
            let f = hex.incidence(b.facets[i]);
            let g = hex.incidence(b.facets[(i + 1) % b.len()]);
            assert!(f.iter().any(|x| g.contains(x)));
        }
    }

    #[test]
    fn parallelotope_examples() {
        assert!(is_parallelotope(&cell("Zn", Some(2))).ok);
        assert!(is_parallelotope(&cell("An", Some(2))).ok);
        let v = is_parallelotope(&octagon());
        assert!(!v.ok);
        assert_eq!(v.failure(), Some(&ParallelotopeFailure::Belt { belt_index: 0, length: 8 }));
    }

    #[test]
    fn simplex_is_not_centrally_symmetric() {
        let ineqs = [[1, 0, 1], [0, 1, 1], [-1, -1, 1]]
            .iter()
            .map(|r| Inequality::new(Vector::from_ints(&r[..2]), int(r[2])))
            .collect();
        let tri = enumerate_vertices(&HPolytope::new(2, ineqs).unwrap()).unwrap();
        let v = is_parallelotope(&tri);
        assert!(matches!(v.failure(), Some(ParallelotopeFailure::CentralSymmetry { .. })));
        assert!(v.belt_failure().is_some());
    }

    #[test]
    fn irreducibility_examples() {
        let g = irreducibility_graph(&cell("Zn", Some(2))).unwrap();
        assert_eq!(g.nodes.len(), 2);
        assert!(g.edges.is_empty());
        assert!(!g.connected);

        let g = irreducibility_graph(&cell("An", Some(2))).unwrap();
        assert_eq!(g.nodes.len(), 3);
        assert_eq!(g.edges, vec![(0, 1), (0, 2), (1, 2)]);
        assert!(g.connected);

        let g = irreducibility_graph(&cell("Zn", Some(3))).unwrap();
        assert_eq!(g.nodes.len(), 3);
        assert!(!g.connected);

        assert!(irreducibility_graph(&cell("An", Some(3))).unwrap().connected);
        assert!(irreducibility_graph(&cell("Dn", Some(4))).unwrap().connected);
        assert_eq!(
            irreducibility_graph(&octagon()),
            Err(PolytopeError::NotParallelotope)
        );
    }
}
