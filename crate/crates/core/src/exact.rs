//! Exact rational scalars, vectors and matrices.
//!
//! Every predicate in the crate is decided on these types. Nothing here ever
//! rounds; the only floating point in the whole crate is the display-only OFF
//! export.

use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::ExactError;

/// Arbitrary precision rational, always in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"`, `"p/q"` or a plain integer literal. Decimal points are
/// refused so that no value is ever silently rounded.
pub fn parse_rational(s: &str) -> Result<Rational, ExactError> {
    let t = s.trim();
    let bad = || ExactError::Parse(s.to_string());
    match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n: BigInt = t.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
    }
}

/// `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Serde adapter that writes rationals as strings.
pub mod rational_str {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let raw = RationalInput::deserialize(d)?;
        raw.into_rational().map_err(serde::de::Error::custom)
    }

    /// Accepts either a JSON integer or a rational string.
    #[derive(Deserialize)]
    #[serde(untagged)]
    pub(crate) enum RationalInput {
        Int(i64),
        Str(String),
    }

    impl RationalInput {
        pub(crate) fn into_rational(self) -> Result<Rational, ExactError> {
            match self {
                RationalInput::Int(n) => Ok(int(n)),
                RationalInput::Str(s) => parse_rational(&s),
            }
        }
    }
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a, I: IntoIterator<Item = &'a Rational>>(qs: I) -> BigInt {
    qs.into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// Floor of a rational as a big integer.
pub fn floor(q: &Rational) -> BigInt {
    q.floor().to_integer()
}

pub fn ceil(q: &Rational) -> BigInt {
    q.ceil().to_integer()
}

/// Dense exact vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vector(pub Vec<Rational>);

impl Vector {
    pub fn zeros(dim: usize) -> Self {
        Vector(vec![Rational::zero(); dim])
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        Vector(xs.iter().map(|&x| int(x)).collect())
    }

    pub fn from_bigints(xs: &[BigInt]) -> Self {
        Vector(xs.iter().cloned().map(Rational::from_integer).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn dot(&self, other: &Vector) -> Result<Rational, ExactError> {
        if self.dim() != other.dim() {
            return Err(ExactError::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(self.dot_unchecked(other))
    }

    pub(crate) fn dot_unchecked(&self, other: &Vector) -> Rational {
        self.0
            .iter()
            .zip(&other.0)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn scale(&self, k: &Rational) -> Vector {
        Vector(self.0.iter().map(|x| x * k).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|x| x.is_integer())
    }

    /// Integer coordinates, if every entry is integral.
    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.is_integral()
            .then(|| self.0.iter().map(|x| x.to_integer()).collect())
    }

    /// Positive multiple with coprime integer entries.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        let den = common_denominator(&self.0);
        let ints: Vec<BigInt> = self
            .0
            .iter()
            .map(|x| (x * Rational::from_integer(den.clone())).to_integer())
            .collect();
        primitive(ints)
    }
}

impl Index<usize> for Vector {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl Add for &Vector {
    type Output = Vector;
    fn add(self, rhs: &Vector) -> Vector {
        assert_eq!(self.dim(), rhs.dim());
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Vector {
    type Output = Vector;
    fn sub(self, rhs: &Vector) -> Vector {
        assert_eq!(self.dim(), rhs.dim());
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        Vector(self.0.iter().map(|x| -x).collect())
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", format_rational(x))?;
        }
        write!(f, ")")
    }
}

impl Serialize for Vector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let strs: Vec<String> = self.0.iter().map(format_rational).collect();
        strs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Vector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = Vec::<rational_str::RationalInput>::deserialize(d)?;
        raw.into_iter()
            .map(|r| r.into_rational())
            .collect::<Result<Vec<_>, _>>()
            .map(Vector)
            .map_err(serde::de::Error::custom)
    }
}

/// Divides out the gcd of the entries. The zero vector is returned unchanged.
pub fn primitive(mut xs: Vec<BigInt>) -> Vec<BigInt> {
    let g = xs.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in &mut xs {
            *x /= &g;
        }
    }
    xs
}

pub fn dot_int(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).fold(BigInt::zero(), |acc, (x, y)| acc + x * y)
}

/// Row-major dense exact matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    /// Builds a matrix from rows; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, ExactError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(ExactError::DimensionMismatch {
                expected: c,
                found: bad.len(),
            });
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Result<Self, ExactError> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| int(x)).collect())
                .collect(),
        )
    }

    pub fn from_vectors(vs: &[Vector]) -> Result<Self, ExactError> {
        Matrix::from_rows(vs.iter().map(|v| v.0.clone()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| Vector(self.row(i).to_vec())).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn mul_vec(&self, v: &Vector) -> Result<Vector, ExactError> {
        if v.dim() != self.cols {
            return Err(ExactError::DimensionMismatch {
                expected: self.cols,
                found: v.dim(),
            });
        }
        Ok(Vector(
            (0..self.rows)
                .map(|i| {
                    self.row(i)
                        .iter()
                        .zip(&v.0)
                        .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
                })
                .collect(),
        ))
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, ExactError> {
        if self.cols != other.rows {
            return Err(ExactError::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Rational::zero();
                for k in 0..self.cols {
                    acc += self.get(i, k) * other.get(k, j);
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix, ExactError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(ExactError::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scale(&self, k: &Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * k).collect(),
        }
    }

    /// Rows scaled by their own common denominators, giving integer rows with
    /// the same row space.
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let den = common_denominator(self.row(i));
                self.row(i)
                    .iter()
                    .map(|x| (x * Rational::from_integer(den.clone())).to_integer())
                    .collect()
            })
            .collect()
    }

    /// Rank by fraction-free (Bareiss) elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.integer_rows();
        bareiss_rank(&mut m, self.cols)
    }

    /// Determinant of a square matrix.
    pub fn determinant(&self) -> Result<Rational, ExactError> {
        if !self.is_square() {
            return Err(ExactError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let (_, pivots, det) = self.gauss_jordan();
        Ok(if pivots.len() == self.rows {
            det
        } else {
            Rational::zero()
        })
    }

    /// Reduced row echelon form, pivot columns and the product of pivots
    /// (with row swap signs), which equals the determinant for a full-rank
    /// square input.
    pub fn gauss_jordan(&self) -> (Matrix, Vec<usize>, Rational) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut det = Rational::one();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
                det = -det;
            }
            let piv = m.get(r, c).clone();
            det *= &piv;
            let inv = piv.recip();
            for j in 0..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in 0..m.cols {
                    let v = m.get(i, j) - &f * m.get(r, j);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots, det)
    }

    /// Basis of `{x : M x = 0}`.
    pub fn null_space(&self) -> Vec<Vector> {
        let (rref, pivots, _) = self.gauss_jordan();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = Vector::zeros(self.cols);
                v.0[f] = Rational::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v.0[pc] = -rref.get(r, f).clone();
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Result<Matrix, ExactError> {
        if !self.is_square() {
            return Err(ExactError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Rational::one());
        }
        let (rref, pivots, _) = aug.gauss_jordan();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(ExactError::Singular);
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, rref.get(i, n + j).clone());
            }
        }
        Ok(inv)
    }

    /// True iff every leading principal minor is positive.
    pub fn is_positive_definite(&self) -> Result<bool, ExactError> {
        if !self.is_symmetric() {
            return Err(ExactError::NotSymmetric);
        }
        // One common scale keeps every minor's sign.
        let den = common_denominator(&self.data);
        let scale = Rational::from_integer(den);
        let mut m: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|x| (x * &scale).to_integer())
                    .collect()
            })
            .collect();
        Ok(bareiss_leading_minors_positive(&mut m))
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.row_vectors().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vector>::deserialize(d)?;
        Matrix::from_vectors(&rows).map_err(serde::de::Error::custom)
    }
}

pub fn dot(u: &Vector, v: &Vector) -> Result<Rational, ExactError> {
    u.dot(v)
}

pub fn rank(m: &Matrix) -> usize {
    m.rank()
}

pub fn is_positive_definite(m: &Matrix) -> Result<bool, ExactError> {
    m.is_positive_definite()
}

/// Solves `M x = rhs` for square `M`. Fails with [`ExactError::Inconsistent`]
/// or [`ExactError::Underdetermined`] when there is no unique solution.
pub fn solve_linear(m: &Matrix, rhs: &Vector) -> Result<Vector, ExactError> {
    if !m.is_square() {
        return Err(ExactError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if rhs.dim() != m.rows() {
        return Err(ExactError::DimensionMismatch {
            expected: m.rows(),
            found: rhs.dim(),
        });
    }
    let n = m.rows();
    let mut aug = Matrix::zeros(n, n + 1);
    for i in 0..n {
        for j in 0..n {
            aug.set(i, j, m.get(i, j).clone());
        }
        aug.set(i, n, rhs[i].clone());
    }
    let (rref, pivots, _) = aug.gauss_jordan();
    if pivots.last() == Some(&n) {
        return Err(ExactError::Inconsistent);
    }
    if pivots.len() < n {
        return Err(ExactError::Underdetermined);
    }
    Ok(Vector((0..n).map(|i| rref.get(i, n).clone()).collect()))
}

fn bareiss_rank(m: &mut [Vec<BigInt>], cols: usize) -> usize {
    let rows = m.len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(p, r);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = (&m[r][c] * &m[i][j] - &m[i][c] * &m[r][j]) / &prev;
                m[i][j] = v;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    r
}

/// Bareiss without pivoting: the k-th pivot equals the k-th leading minor.
fn bareiss_leading_minors_positive(m: &mut [Vec<BigInt>]) -> bool {
    let n = m.len();
    let mut prev = BigInt::one();
    for k in 0..n {
        if !m[k][k].is_positive() {
            return false;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[k][k] * &m[i][j] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    true
}

/// Canonical basis of a subspace: the nonzero rows of the reduced row echelon
/// form. Two spans are equal iff their canonical bases are equal.
pub fn canonical_span(vs: &[Vector], dim: usize) -> Vec<Vector> {
    if vs.is_empty() {
        return Vec::new();
    }
    let m = Matrix::from_vectors(vs).expect("vectors of equal dimension");
    debug_assert_eq!(m.cols(), dim);
    let (rref, pivots, _) = m.gauss_jordan();
    (0..pivots.len())
        .map(|i| Vector(rref.row(i).to_vec()))
        .collect()
}

/// True when `v` lies in the span of `basis`.
pub fn in_span(basis: &[Vector], v: &Vector) -> bool {
    if v.is_zero() {
        return true;
    }
    if basis.is_empty() {
        return false;
    }
    let mut rows = basis.to_vec();
    let before = Matrix::from_vectors(&rows).unwrap().rank();
    rows.push(v.clone());
    Matrix::from_vectors(&rows).unwrap().rank() == before
}
