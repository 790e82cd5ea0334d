//! Quadratic forms on `Z^d`, the lattice catalog, and parity-class minima.
//!
//! The lattice is always `Z^d` in its own basis; all metric information sits
//! in the Gram matrix. A vector `p` is a contact vector when it has minimal
//! form value among the vectors congruent to it modulo `2Z^d`. A parity class
//! whose minimum is attained by exactly one `±p` pair contributes `p` as a
//! facet normal of the cell `{x : <p,x> <= a(p)}`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::LatticeError;
use crate::exact::{self, int, rational_str, Matrix, Rational, Vector};
use crate::par::{self, Strategy};

/// Largest dimension for which parity-class enumeration is attempted.
pub const DEFAULT_ENUMERATION_CAP: usize = 8;

/// Integer point of the canonical lattice `Z^d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticeVector(pub Vec<i64>);

impl LatticeVector {
    pub fn new(coords: Vec<i64>) -> Self {
        LatticeVector(coords)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn to_vector(&self) -> Vector {
        Vector::from_ints(&self.0)
    }

    pub fn neg(&self) -> LatticeVector {
        LatticeVector(self.0.iter().map(|x| -x).collect())
    }

    pub fn add(&self, other: &LatticeVector) -> LatticeVector {
        LatticeVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &LatticeVector) -> LatticeVector {
        LatticeVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Exact `<v, self>` for a rational vector `v`.
    pub fn dot(&self, v: &Vector) -> Rational {
        debug_assert_eq!(self.dim(), v.dim());
        self.0
            .iter()
            .zip(v.entries())
            .filter(|(c, _)| **c != 0)
            .fold(Rational::zero(), |acc, (c, x)| acc + x * int(*c))
    }

    pub fn dot_int(&self, other: &LatticeVector) -> i64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    /// Parity class as a bit mask: bit `i` is set iff coordinate `i` is odd.
    pub fn parity(&self) -> u32 {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, x)| *x % 2 != 0)
            .fold(0, |acc, (i, _)| acc | (1 << i))
    }

    /// Representative of the `±` pair whose first nonzero coordinate is
    /// positive.
    pub fn canonical_sign(&self) -> LatticeVector {
        match self.0.iter().find(|&&x| x != 0) {
            Some(&x) if x < 0 => self.neg(),
            _ => self.clone(),
        }
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Positive definite quadratic form `a(p) = <p, A p>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadForm {
    gram: Matrix,
}

/// JSON shape of a form: `{ "dim": d, "gram": [[rational strings]] }`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FormDocument {
    pub dim: usize,
    pub gram: Matrix,
}

impl QuadForm {
    /// Validates a Gram matrix; singular or indefinite input is rejected.
    pub fn new(gram: Matrix) -> Result<Self, LatticeError> {
        if gram.rows() == 0 {
            return Err(LatticeError::EmptyForm);
        }
        if !gram.is_square() || !gram.is_symmetric() {
            return Err(LatticeError::NotSymmetric);
        }
        if !gram.is_positive_definite()? {
            return Err(LatticeError::NotPositiveDefinite);
        }
        Ok(QuadForm { gram })
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Result<Self, LatticeError> {
        QuadForm::new(Matrix::from_int_rows(rows)?)
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn eval(&self, p: &LatticeVector) -> Result<Rational, LatticeError> {
        self.check_dim(p)?;
        Ok(self.eval_unchecked(p))
    }

    pub(crate) fn eval_unchecked(&self, p: &LatticeVector) -> Rational {
        let d = self.dim();
        let mut acc = Rational::zero();
        for i in 0..d {
            if p.0[i] == 0 {
                continue;
            }
            let mut row = Rational::zero();
            for j in 0..d {
                if p.0[j] != 0 {
                    row += self.gram.get(i, j) * int(p.0[j]);
                }
            }
            acc += row * int(p.0[i]);
        }
        acc
    }

    /// `A p` as a rational vector.
    pub fn apply(&self, p: &LatticeVector) -> Result<Vector, LatticeError> {
        self.check_dim(p)?;
        Ok(self.gram.mul_vec(&p.to_vector())?)
    }

    /// The form `A + b e e^T`.
    pub fn add_rank_one(&self, e: &Vector, b: &Rational) -> Result<QuadForm, LatticeError> {
        let d = self.dim();
        if e.dim() != d {
            return Err(LatticeError::Exact(crate::error::ExactError::DimensionMismatch {
                expected: d,
                found: e.dim(),
            }));
        }
        let mut g = self.gram.clone();
        for i in 0..d {
            for j in 0..d {
                let v = g.get(i, j) + b * &e[i] * &e[j];
                g.set(i, j, v);
            }
        }
        QuadForm::new(g)
    }

    pub fn to_document(&self) -> FormDocument {
        FormDocument {
            dim: self.dim(),
            gram: self.gram.clone(),
        }
    }

    pub fn from_document(doc: FormDocument) -> Result<Self, LatticeError> {
        if doc.gram.rows() != doc.dim {
            return Err(LatticeError::Exact(crate::error::ExactError::DimensionMismatch {
                expected: doc.dim,
                found: doc.gram.rows(),
            }));
        }
        QuadForm::new(doc.gram)
    }

    fn check_dim(&self, p: &LatticeVector) -> Result<(), LatticeError> {
        if p.dim() != self.dim() {
            return Err(LatticeError::Exact(crate::error::ExactError::DimensionMismatch {
                expected: self.dim(),
                found: p.dim(),
            }));
        }
        Ok(())
    }
}

pub fn make_form(gram: Matrix) -> Result<QuadForm, LatticeError> {
    QuadForm::new(gram)
}

pub fn eval_form(a: &QuadForm, p: &LatticeVector) -> Result<Rational, LatticeError> {
    a.eval(p)
}

// ---------------------------------------------------------------------------
// Catalog

/// Names accepted by [`catalog`].
pub const CATALOG_NAMES: [&str; 10] = ["Zn", "An", "An*", "Dn", "Dn*", "E6", "E6*", "E7", "E7*", "E8"];

fn cartan_from_edges(n: usize, edges: &[(usize, usize)]) -> Matrix {
    let mut m = Matrix::identity(n).scale(&int(2));
    for &(i, j) in edges {
        m.set(i, j, int(-1));
        m.set(j, i, int(-1));
    }
    m
}

fn cartan_a(n: usize) -> Matrix {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    cartan_from_edges(n, &edges)
}

fn cartan_d(n: usize) -> Matrix {
    let mut edges: Vec<_> = (1..n - 1).map(|i| (i - 1, i)).collect();
    edges.push((n - 3, n - 1));
    cartan_from_edges(n, &edges)
}

fn cartan_e(n: usize) -> Matrix {
    let mut edges = vec![(0, 2), (2, 3), (3, 4), (4, 5), (1, 3)];
    if n >= 7 {
        edges.push((5, 6));
    }
    if n >= 8 {
        edges.push((6, 7));
    }
    cartan_from_edges(n, &edges)
}

/// Splits catalog shorthands like `"A2"` or `"D4*"` into a name and a size.
pub fn parse_catalog_name(spec: &str) -> Option<(String, Option<usize>)> {
    let s = spec.trim();
    if CATALOG_NAMES.contains(&s) {
        return Some((s.to_string(), None));
    }
    let (body, star) = match s.strip_suffix('*') {
        Some(b) => (b, "*"),
        None => (s, ""),
    };
    let mut chars = body.chars();
    let head = chars.next()?;
    let n: usize = chars.as_str().parse().ok()?;
    let name = match head {
        'E' => format!("E{n}{star}"),
        'Z' | 'A' | 'D' => format!("{head}n{star}"),
        _ => return None,
    };
    CATALOG_NAMES.contains(&name.as_str()).then_some((name, Some(n)))
}

/// Gram matrix of a named lattice in a basis of simple roots (or of the dual
/// basis for starred names).
pub fn catalog(name: &str, n: Option<usize>) -> Result<QuadForm, LatticeError> {
    let invalid = |n: usize| LatticeError::InvalidParameter {
        name: name.to_string(),
        n,
    };
    let need = |min: usize| -> Result<usize, LatticeError> {
        match n {
            Some(k) if k >= min => Ok(k),
            Some(k) => Err(invalid(k)),
            None => Err(invalid(0)),
        }
    };
    let fixed = |dim: usize| -> Result<usize, LatticeError> {
        match n {
            None => Ok(dim),
            Some(k) if k == dim => Ok(dim),
            Some(k) => Err(invalid(k)),
        }
    };
    let gram = match name {
        "Zn" => Matrix::identity(need(1)?),
        "An" => cartan_a(need(1)?),
        "An*" => cartan_a(need(1)?).inverse()?,
        "Dn" => cartan_d(need(3)?),
        "Dn*" => cartan_d(need(3)?).inverse()?,
        "E6" => cartan_e(fixed(6)?),
        "E6*" => cartan_e(fixed(6)?).inverse()?,
        "E7" => cartan_e(fixed(7)?),
        "E7*" => cartan_e(fixed(7)?).inverse()?,
        "E8" => cartan_e(fixed(8)?),
        _ => {
            return match parse_catalog_name(name) {
                Some((canon, k)) if canon != name => catalog(&canon, k.or(n)),
                _ => Err(LatticeError::UnknownLattice(name.to_string())),
            }
        }
    };
    QuadForm::new(gram)
}

/// Display label such as `A2`, `D4*` or `E6`.
pub fn catalog_label(name: &str, n: Option<usize>) -> String {
    match (name.strip_suffix("n*"), name.strip_suffix('n'), n) {
        (Some(h), _, Some(k)) => format!("{h}{k}*"),
        (None, Some(h), Some(k)) => format!("{h}{k}"),
        _ => name.to_string(),
    }
}

// ---------------------------------------------------------------------------
// Parity-class minima

/// Minimal vectors of one nonzero class of `Z^d / 2Z^d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityClass {
    /// Residues mod 2, coordinate by coordinate.
    pub class: Vec<u8>,
    #[serde(with = "rational_str", rename = "minNorm")]
    pub min_norm: Rational,
    /// Sorted lexicographically; closed under negation.
    pub minima: Vec<LatticeVector>,
    pub relevant: bool,
}

impl ParityClass {
    pub fn mask(&self) -> u32 {
        self.class
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &c)| acc | (u32::from(c) << i))
    }
}

/// All parity-class minima of a form, ordered by the binary value of the class
/// (coordinate 0 is the least significant bit).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContactVectorSet {
    pub dim: usize,
    pub classes: Vec<ParityClass>,
}

impl ContactVectorSet {
    /// Every contact vector, sorted.
    pub fn contact_vectors(&self) -> Vec<LatticeVector> {
        let mut out: Vec<_> = self
            .classes
            .iter()
            .flat_map(|c| c.minima.iter().cloned())
            .collect();
        out.sort();
        out
    }

    /// Facet normals: the vectors of classes whose minimum is a single pair.
    pub fn facet_normals(&self) -> Vec<LatticeVector> {
        let mut out: Vec<_> = self
            .classes
            .iter()
            .filter(|c| c.relevant)
            .flat_map(|c| c.minima.iter().cloned())
            .collect();
        out.sort();
        out
    }

    pub fn class_of(&self, p: &LatticeVector) -> Option<&ParityClass> {
        let mask = p.parity();
        if mask == 0 {
            return None;
        }
        self.classes.get(mask as usize - 1)
    }

    pub fn is_contact(&self, p: &LatticeVector) -> bool {
        self.class_of(p).is_some_and(|c| c.minima.binary_search(p).is_ok())
    }

    pub fn is_facet_normal(&self, p: &LatticeVector) -> bool {
        self.class_of(p)
            .is_some_and(|c| c.relevant && c.minima.binary_search(p).is_ok())
    }
}

/// `A = L D L^T` style decomposition used to walk the ellipsoid coordinate by
/// coordinate: `a(x) = sum_k q_k (x_k + sum_{j>k} mu_kj x_j)^2`.
struct Decomposition {
    q: Vec<Rational>,
    mu: Vec<Vec<Rational>>,
}

impl Decomposition {
    fn new(form: &QuadForm) -> Self {
        let d = form.dim();
        let mut s: Vec<Vec<Rational>> = (0..d)
            .map(|i| (0..d).map(|j| form.gram().get(i, j).clone()).collect())
            .collect();
        let mut q = vec![Rational::zero(); d];
        let mut mu = vec![vec![Rational::zero(); d]; d];
        for k in 0..d {
            q[k] = s[k][k].clone();
            for j in k + 1..d {
                mu[k][j] = &s[k][j] / &q[k];
            }
            for i in k + 1..d {
                for j in k + 1..d {
                    let v = &s[i][j] - &s[k][i] * &s[k][j] / &q[k];
                    s[i][j] = v;
                }
            }
        }
        Decomposition { q, mu }
    }
}

/// Integers `x` with `(x - c)^2 <= s` and `x ≡ parity (mod 2)`.
fn admissible_range(c: &Rational, s: &Rational, parity: i64) -> Vec<i64> {
    if s.is_negative() {
        return Vec::new();
    }
    let t = exact::floor(s).sqrt();
    let lo = exact::floor(c) - &t - BigInt::one();
    let hi = exact::ceil(c) + &t + BigInt::one();
    let (Some(lo), Some(hi)) = (lo.to_i64(), hi.to_i64()) else {
        panic!("enumeration range exceeds i64");
    };
    let start = if (lo - parity).rem_euclid(2) == 0 { lo } else { lo + 1 };
    (start..=hi)
        .step_by(2)
        .filter(|&x| {
            let dx = int(x) - c;
            &dx * &dx <= *s
        })
        .collect()
}

struct ClassSearch<'a> {
    dec: &'a Decomposition,
    parity: Vec<i64>,
    x: Vec<i64>,
    best: Rational,
    found: Vec<LatticeVector>,
}

impl ClassSearch<'_> {
    fn descend(&mut self, k: usize, partial: Rational) {
        let d = self.x.len();
        let mut center = Rational::zero();
        for j in k + 1..d {
            if self.x[j] != 0 {
                center -= &self.dec.mu[k][j] * int(self.x[j]);
            }
        }
        let budget = &self.best - &partial;
        let candidates = admissible_range(&center, &(&budget / &self.dec.q[k]), self.parity[k]);
        for xk in candidates {
            let dx = int(xk) - &center;
            let value = &partial + &self.dec.q[k] * &dx * &dx;
            // `best` may have shrunk since the range was computed.
            if value > self.best {
                continue;
            }
            self.x[k] = xk;
            if k == 0 {
                if value < self.best {
                    self.best = value;
                    self.found.clear();
                }
                self.found.push(LatticeVector(self.x.clone()));
            } else {
                self.descend(k - 1, value);
            }
        }
        self.x[k] = 0;
    }
}

fn class_minima(form: &QuadForm, dec: &Decomposition, mask: u32) -> ParityClass {
    let d = form.dim();
    let class: Vec<u8> = (0..d).map(|i| ((mask >> i) & 1) as u8).collect();
    let rep = LatticeVector(class.iter().map(|&c| i64::from(c)).collect());
    let mut search = ClassSearch {
        dec,
        parity: rep.0.clone(),
        x: vec![0; d],
        best: form.eval_unchecked(&rep),
        found: Vec::new(),
    };
    search.descend(d - 1, Rational::zero());
    let mut minima = search.found;
    minima.sort();
    minima.dedup();
    let relevant = minima.len() == 2;
    ParityClass {
        class,
        min_norm: search.best,
        minima,
        relevant,
    }
}

/// Minimal vectors of every nonzero parity class, with the default cap.
pub fn coset_minima(form: &QuadForm) -> Result<ContactVectorSet, LatticeError> {
    coset_minima_with(form, DEFAULT_ENUMERATION_CAP, Strategy::default())
}

/// Minimal vectors of every nonzero parity class. Classes are searched
/// independently; the result does not depend on `strategy`.
pub fn coset_minima_with(
    form: &QuadForm,
    cap: usize,
    strategy: Strategy,
) -> Result<ContactVectorSet, LatticeError> {
    let d = form.dim();
    if d > cap || d > 16 {
        return Err(LatticeError::DimensionCap { dim: d, cap });
    }
    let dec = Decomposition::new(form);
    let n_classes = (1usize << d) - 1;
    let classes = par::map_range(strategy, n_classes, |i| class_minima(form, &dec, i as u32 + 1));
    Ok(ContactVectorSet { dim: d, classes })
}

pub fn facet_normals(cs: &ContactVectorSet) -> Vec<LatticeVector> {
    cs.facet_normals()
}

/// The commensurate vector `2 A p` of a contact vector `p`.
pub fn commensurate(
    form: &QuadForm,
    contacts: &ContactVectorSet,
    p: &LatticeVector,
) -> Result<Vector, LatticeError> {
    form.check_dim(p)?;
    if !contacts.is_contact(p) {
        return Err(LatticeError::NotContactVector(p.to_string()));
    }
    Ok(form.apply(p)?.scale(&int(2)))
}

/// The layer `z = <e, v>` of `v` in the slicing of `Z^d` by hyperplanes
/// `<e, x> = z`.
pub fn layer_index(e: &Vector, v: &LatticeVector) -> Result<BigInt, LatticeError> {
    if e.dim() != v.dim() {
        return Err(LatticeError::Exact(crate::error::ExactError::DimensionMismatch {
            expected: e.dim(),
            found: v.dim(),
        }));
    }
    let z = v.dot(e);
    if !z.is_integer() {
        return Err(LatticeError::NonIntegralLayer(exact::format_rational(&z)));
    }
    Ok(z.to_integer())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::frac;

    fn lv(xs: &[i64]) -> LatticeVector {
        LatticeVector(xs.to_vec())
    }

    fn a2() -> QuadForm {
        QuadForm::from_int_rows(&[&[2, -1], &[-1, 2]]).unwrap()
    }

    /// Box scan over `|x_i| <= r`, independent of the ellipsoid walk.
    fn brute_force_minima(form: &QuadForm, r: i64) -> Vec<(u32, Rational, Vec<LatticeVector>)> {
        let d = form.dim();
        let mut best: Vec<Option<(Rational, Vec<LatticeVector>)>> = vec![None; 1 << d];
        let mut x = vec![-r; d];
        loop {
            let p = lv(&x);
            let m = p.parity();
            if m != 0 {
                let v = form.eval(&p).unwrap();
                match &mut best[m as usize] {
                    Some((b, list)) if v == *b => list.push(p),
                    Some((b, _)) if v > *b => {}
                    slot => *slot = Some((v, vec![p])),
                }
            }
            let mut i = 0;
            loop {
                if i == d {
                    return best
                        .into_iter()
                        .enumerate()
                        .skip(1)
                        .map(|(m, s)| {
                            let (v, mut l) = s.unwrap();
                            l.sort();
                            (m as u32, v, l)
                        })
                        .collect();
                }
                x[i] += 1;
                if x[i] <= r {
                    break;
                }
                x[i] = -r;
                i += 1;
            }
        }
    }

    #[test]
    fn make_form_examples() {
        assert!(QuadForm::new(Matrix::identity(2)).is_ok());
        assert!(QuadForm::from_int_rows(&[&[2, -1], &[-1, 2]]).is_ok());
        assert_eq!(
            QuadForm::from_int_rows(&[&[1, 1], &[1, 1]]),
            Err(LatticeError::NotPositiveDefinite)
        );
        assert_eq!(
            QuadForm::from_int_rows(&[&[1, 1], &[0, 1]]),
            Err(LatticeError::NotSymmetric)
        );
    }

    #[test]
    fn eval_examples() {
        let id = QuadForm::new(Matrix::identity(2)).unwrap();
        assert_eq!(id.eval(&lv(&[1, 1])).unwrap(), int(2));
        assert_eq!(a2().eval(&lv(&[1, 1])).unwrap(), int(2));
        assert_eq!(a2().eval(&lv(&[1, -1])).unwrap(), int(6));
        assert!(a2().eval(&lv(&[1])).is_err());
    }

    #[test]
    fn catalog_examples() {
        assert_eq!(catalog("Zn", Some(2)).unwrap().gram(), &Matrix::identity(2));
        assert_eq!(
            catalog("An", Some(2)).unwrap().gram(),
            &Matrix::from_int_rows(&[&[2, -1], &[-1, 2]]).unwrap()
        );
        assert_eq!(catalog("A2", None).unwrap(), a2());
        assert!(matches!(catalog("Dn", Some(2)), Err(LatticeError::InvalidParameter { .. })));
        assert!(matches!(catalog("E6", Some(7)), Err(LatticeError::InvalidParameter { .. })));
        assert!(matches!(catalog("F4", None), Err(LatticeError::UnknownLattice(_))));
        for name in CATALOG_NAMES {
            let n = match name {
                "Zn" | "An" | "An*" => Some(3),
                "Dn" | "Dn*" => Some(4),
                _ => None,
            };
            assert!(catalog(name, n).is_ok(), "{name}");
        }
    }

    #[test]
    fn e6_dual_gram_by_brute_force() {
        let e6s = catalog("E6*", None).unwrap();
        assert_eq!(e6s.dim(), 6);
        // det(E6) = 3, so the dual has det 1/3.
        assert_eq!(e6s.gram().determinant().unwrap(), frac(1, 3));
        // Minimum over a box large enough for this small form.
        let mut min: Option<Rational> = None;
        let mut x = [-2i64; 6];
        loop {
            if x.iter().any(|&c| c != 0) {
                let v = e6s.eval(&lv(&x)).unwrap();
                if min.as_ref().is_none_or(|m| v < *m) {
                    min = Some(v);
                }
            }
            let mut i = 0;
            while i < 6 {
                x[i] += 1;
                if x[i] <= 2 {
                    break;
                }
                x[i] = -2;
                i += 1;
            }
            if i == 6 {
                break;
            }
        }
        assert_eq!(min.unwrap(), frac(4, 3));
    }

    #[test]
    fn identity_classes() {
        let cs = coset_minima(&QuadForm::new(Matrix::identity(2)).unwrap()).unwrap();
        assert_eq!(cs.classes.len(), 3);
        assert_eq!(cs.classes[0].class, vec![1, 0]);
        assert_eq!(cs.classes[0].minima, vec![lv(&[-1, 0]), lv(&[1, 0])]);
        assert!(cs.classes[0].relevant);
        assert_eq!(cs.classes[1].minima, vec![lv(&[0, -1]), lv(&[0, 1])]);
        assert!(cs.classes[1].relevant);
        assert_eq!(
            cs.classes[2].minima,
            vec![lv(&[-1, -1]), lv(&[-1, 1]), lv(&[1, -1]), lv(&[1, 1])]
        );
        assert!(!cs.classes[2].relevant);
        assert_eq!(
            cs.facet_normals(),
            vec![lv(&[-1, 0]), lv(&[0, -1]), lv(&[0, 1]), lv(&[1, 0])]
        );
    }

    #[test]
    fn a2_and_d4_match_box_scan() {
        let cs = coset_minima(&a2()).unwrap();
        let oracle = brute_force_minima(&a2(), 3);
        for (c, (mask, v, list)) in cs.classes.iter().zip(oracle) {
            assert_eq!(c.mask(), mask);
            assert_eq!(c.min_norm, v);
            assert_eq!(c.minima, list);
            assert!(c.relevant);
        }
        assert_eq!(cs.facet_normals().len(), 6);

        let d4 = catalog("Dn", Some(4)).unwrap();
        let cs = coset_minima(&d4).unwrap();
        let oracle = brute_force_minima(&d4, 4);
        let oracle_normals: usize = oracle.iter().filter(|o| o.2.len() == 2).count() * 2;
        assert_eq!(cs.facet_normals().len(), 24);
        assert_eq!(oracle_normals, 24);
        for (c, (_, v, list)) in cs.classes.iter().zip(oracle) {
            assert_eq!(c.min_norm, v);
            assert_eq!(c.minima, list);
        }
    }

    #[test]
    fn e7_facets_are_the_roots() {
        let e7 = catalog("E7", None).unwrap();
        let normals = coset_minima(&e7).unwrap().facet_normals();
        assert_eq!(normals.len(), 126);
        assert!(normals.iter().all(|p| e7.eval(p).unwrap() == int(2)));
    }

    #[test]
    fn strategies_agree() {
        let d5 = catalog("Dn", Some(5)).unwrap();
        let a = coset_minima_with(&d5, 8, Strategy::Sequential).unwrap();
        let b = coset_minima_with(&d5, 8, Strategy::Parallel).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn dimension_cap() {
        let z = catalog("Zn", Some(9)).unwrap();
        assert_eq!(
            coset_minima(&z),
            Err(LatticeError::DimensionCap { dim: 9, cap: 8 })
        );
    }

    #[test]
    fn commensurate_examples() {
        let id2 = QuadForm::new(Matrix::identity(2)).unwrap();
        let cs = coset_minima(&id2).unwrap();
        assert_eq!(commensurate(&id2, &cs, &lv(&[1, 0])).unwrap(), Vector::from_ints(&[2, 0]));
        let cs_a2 = coset_minima(&a2()).unwrap();
        assert_eq!(
            commensurate(&a2(), &cs_a2, &lv(&[1, 0])).unwrap(),
            Vector::from_ints(&[4, -2])
        );
        let id3 = QuadForm::new(Matrix::identity(3)).unwrap();
        let cs3 = coset_minima(&id3).unwrap();
        assert_eq!(
            commensurate(&id3, &cs3, &lv(&[1, 1, 0])).unwrap(),
            Vector::from_ints(&[2, 2, 0])
        );
        assert!(matches!(
            commensurate(&id2, &cs, &lv(&[2, 0])),
            Err(LatticeError::NotContactVector(_))
        ));
    }

    #[test]
    fn layer_index_examples() {
        assert_eq!(layer_index(&Vector::from_ints(&[1, 0]), &lv(&[3, 5])).unwrap(), BigInt::from(3));
        assert_eq!(layer_index(&Vector::from_ints(&[1, 1]), &lv(&[2, -2])).unwrap(), BigInt::from(0));
        assert!(matches!(
            layer_index(&Vector(vec![frac(1, 2), int(0)]), &lv(&[1, 0])),
            Err(LatticeError::NonIntegralLayer(_))
        ));
    }

    #[test]
    fn catalog_shorthand() {
        assert_eq!(parse_catalog_name("A2"), Some(("An".into(), Some(2))));
        assert_eq!(parse_catalog_name("D4*"), Some(("Dn*".into(), Some(4))));
        assert_eq!(parse_catalog_name("E7*"), Some(("E7*".into(), None)));
        assert_eq!(parse_catalog_name("Q3"), None);
        assert_eq!(catalog_label("Dn*", Some(4)), "D4*");
        assert_eq!(catalog_label("E6", None), "E6");
    }
}
