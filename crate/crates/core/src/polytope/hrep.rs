use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::dd;
use crate::error::PolytopeError;
use crate::exact::{common_denominator, primitive, rational_str, Matrix, Rational, Vector};
use crate::lattice::{LatticeVector, QuadForm};

/// Half-space `<normal, x> <= support`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Inequality {
    pub normal: Vector,
    #[serde(with = "rational_str")]
    pub support: Rational,
}

impl Inequality {
    pub fn new(normal: Vector, support: Rational) -> Self {
        Inequality { normal, support }
    }

    /// Positive rescaling with a primitive integer normal. Two inequalities
    /// describe the same half-space iff their canonical forms are equal.
    pub fn canonical(&self) -> Inequality {
        let ints = self.normal.primitive_integer();
        let first = self
            .normal
            .entries()
            .iter()
            .zip(&ints)
            .find(|(q, _)| !q.is_zero())
            .map(|(q, i)| Rational::from_integer(i.clone()) / q);
        match first {
            Some(k) => Inequality {
                normal: Vector::from_bigints(&ints),
                support: &self.support * k,
            },
            None => self.clone(),
        }
    }

    pub fn value(&self, x: &Vector) -> Rational {
        self.normal.dot_unchecked(x)
    }

    /// Integer row `[D·s, -D·n]` of the homogenized cone `{(t, x)}`.
    pub(crate) fn homogenized_row(&self) -> Vec<BigInt> {
        let den = common_denominator(self.normal.entries().iter().chain([&self.support]));
        let scale = Rational::from_integer(den);
        let mut row = Vec::with_capacity(self.normal.dim() + 1);
        row.push((&self.support * &scale).to_integer());
        row.extend(self.normal.entries().iter().map(|x| (-(x * &scale)).to_integer()));
        primitive(row)
    }
}

/// Polytope `{x : <n_i, x> <= s_i}`; bounded by construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HPolytope {
    pub dim: usize,
    #[serde(rename = "inequalities")]
    pub ineqs: Vec<Inequality>,
}

impl HPolytope {
    /// Checks dimensions and that the normals positively span the space,
    /// which is exactly boundedness of a nonempty polytope.
    pub fn new(dim: usize, ineqs: Vec<Inequality>) -> Result<Self, PolytopeError> {
        if ineqs.is_empty() {
            return Err(PolytopeError::Empty);
        }
        if let Some(bad) = ineqs.iter().find(|q| q.normal.dim() != dim) {
            return Err(PolytopeError::Exact(crate::error::ExactError::DimensionMismatch {
                expected: dim,
                found: bad.normal.dim(),
            }));
        }
        let normals: Vec<Vector> = ineqs.iter().map(|q| q.normal.clone()).collect();
        if !positively_spanning(&normals, dim) {
            return Err(PolytopeError::UnboundedCell);
        }
        Ok(HPolytope { dim, ineqs })
    }

    pub fn normals(&self) -> Vec<Vector> {
        self.ineqs.iter().map(|q| q.normal.clone()).collect()
    }

    pub fn contains(&self, x: &Vector) -> bool {
        self.ineqs.iter().all(|q| q.value(x) <= q.support)
    }

    /// Canonical, sorted, deduplicated inequality list.
    pub fn canonical_inequalities(&self) -> Vec<Inequality> {
        let mut v: Vec<_> = self.ineqs.iter().map(Inequality::canonical).collect();
        v.sort();
        v.dedup();
        v
    }

    /// Whether the inequality set is closed under `(n, s) -> (-n, s)`.
    pub fn is_centrally_symmetric(&self) -> bool {
        let canon = self.canonical_inequalities();
        canon.iter().all(|q| {
            let neg = Inequality::new(-&q.normal, q.support.clone()).canonical();
            canon.binary_search(&neg).is_ok()
        })
    }
}

fn negation_closed(normals: &[Vector]) -> bool {
    let mut dirs: Vec<Vec<BigInt>> = normals.iter().map(Vector::primitive_integer).collect();
    dirs.sort();
    dirs.dedup();
    dirs.iter().all(|d| {
        let neg: Vec<BigInt> = d.iter().map(|x| -x).collect();
        dirs.binary_search(&neg).is_ok()
    })
}

/// True iff the only `x` with `<n_i, x> <= 0` for all `i` is `x = 0`.
pub fn positively_spanning(normals: &[Vector], dim: usize) -> bool {
    if normals.is_empty() {
        return dim == 0;
    }
    let m = match Matrix::from_vectors(normals) {
        Ok(m) => m,
        Err(_) => return false,
    };
    if m.rank() < dim {
        return false;
    }
    if negation_closed(normals) {
        return true;
    }
    // Cone {x : -n_i·x >= 0} is pointed; it is {0} iff it has no extreme rays.
    let rows: Vec<Vec<BigInt>> = normals
        .iter()
        .map(|n| n.primitive_integer().into_iter().map(|x| -x).collect())
        .collect();
    dd::extreme_rays(&rows, dim).is_some_and(|r| r.is_empty())
}

/// The cell `{x : <p, x> <= a(p)}` over the given normals.
pub fn build_cell(form: &QuadForm, normals: &[LatticeVector]) -> Result<HPolytope, PolytopeError> {
    let ineqs = normals
        .iter()
        .map(|p| Ok(Inequality::new(p.to_vector(), form.eval(p)?)))
        .collect::<Result<Vec<_>, PolytopeError>>()?;
    HPolytope::new(form.dim(), ineqs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{frac, int};

    fn lv(xs: &[i64]) -> LatticeVector {
        LatticeVector(xs.to_vec())
    }

    #[test]
    fn square_and_hexagon() {
        let id = QuadForm::new(Matrix::identity(2)).unwrap();
        let sq = build_cell(&id, &[lv(&[1, 0]), lv(&[-1, 0]), lv(&[0, 1]), lv(&[0, -1])]).unwrap();
        assert!(sq.ineqs.iter().all(|q| q.support == int(1)));
        assert!(sq.is_centrally_symmetric());

        let a2 = QuadForm::from_int_rows(&[&[2, -1], &[-1, 2]]).unwrap();
        let normals = [[1, 0], [0, 1], [1, 1], [-1, 0], [0, -1], [-1, -1]].map(|x| lv(&x));
        let hex = build_cell(&a2, &normals).unwrap();
        assert!(hex.ineqs.iter().all(|q| q.support == int(2)));
    }

    #[test]
    fn unbounded_cells_are_rejected() {
        let id = QuadForm::new(Matrix::identity(2)).unwrap();
        assert_eq!(
            build_cell(&id, &[lv(&[1, 0]), lv(&[-1, 0])]),
            Err(PolytopeError::UnboundedCell)
        );
        // Full rank but all normals in one half-plane.
        assert_eq!(
            build_cell(&id, &[lv(&[1, 0]), lv(&[0, 1]), lv(&[1, 1])]),
            Err(PolytopeError::UnboundedCell)
        );
        // A simplex is bounded without being symmetric.
        assert!(build_cell(&id, &[lv(&[1, 0]), lv(&[0, 1]), lv(&[-1, -1])]).is_ok());
    }

    #[test]
    fn canonical_inequality() {
        let q = Inequality::new(Vector(vec![frac(2, 3), frac(-4, 3)]), int(2));
        let c = q.canonical();
        assert_eq!(c.normal, Vector::from_ints(&[1, -2]));
        assert_eq!(c.support, int(3));
        let q = Inequality::new(Vector::from_ints(&[-2, 0]), int(4));
        assert_eq!(q.canonical(), Inequality::new(Vector::from_ints(&[-1, 0]), int(2)));
    }
}
