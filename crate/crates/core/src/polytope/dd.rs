//! Double description: extreme rays of a pointed cone `{y : A y >= 0}`.
//!
//! Rows and rays are kept as primitive integer vectors, so every step is an
//! integer computation. Rows are inserted in the order given; the initial
//! cone is spanned by the first linearly independent rows.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::exact::{dot_int, primitive, Matrix, Rational};

/// Fixed-width bit set over row or vertex indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bitset {
    words: Vec<u64>,
}

impl Bitset {
    pub fn new(len: usize) -> Self {
        Bitset {
            words: vec![0; len.div_ceil(64).max(1)],
        }
    }

    pub fn from_indices(len: usize, idx: impl IntoIterator<Item = usize>) -> Self {
        let mut b = Bitset::new(len);
        for i in idx {
            b.insert(i);
        }
        b
    }

    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words.get(i / 64).is_some_and(|w| w & (1 << (i % 64)) != 0)
    }

    pub fn and(&self, other: &Bitset) -> Bitset {
        Bitset {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    pub fn is_superset(&self, other: &Bitset) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == *b)
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            (0..64).filter(move |b| w & (1 << b) != 0).map(move |b| k * 64 + b)
        })
    }
}

struct Ray {
    v: Vec<BigInt>,
    zeros: Bitset,
}

fn sign_adjust(mut v: Vec<BigInt>, positive_against: &[BigInt]) -> Vec<BigInt> {
    if dot_int(&v, positive_against).is_negative() {
        for x in &mut v {
            *x = -&*x;
        }
    }
    v
}

/// Extreme rays of `{y : rows·y >= 0}`. Returns `None` if the rows do not
/// have full column rank (the cone is not pointed).
pub fn extreme_rays(rows: &[Vec<BigInt>], n: usize) -> Option<Vec<Vec<BigInt>>> {
    let m = rows.len();
    // Greedy choice of n independent rows, in insertion order.
    let mut basis: Vec<usize> = Vec::with_capacity(n);
    let mut echelon: Vec<Vec<Rational>> = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        if basis.len() == n {
            break;
        }
        let mut r: Vec<Rational> = row.iter().cloned().map(Rational::from_integer).collect();
        for e in &echelon {
            let piv = e.iter().position(|x| !x.is_zero()).unwrap();
            if !r[piv].is_zero() {
                let f = &r[piv] / &e[piv];
                for (x, y) in r.iter_mut().zip(e) {
                    *x -= &f * y;
                }
            }
        }
        if r.iter().any(|x| !x.is_zero()) {
            echelon.push(r);
            basis.push(i);
        }
    }
    if basis.len() < n {
        return None;
    }

    let k = Matrix::from_rows(
        basis
            .iter()
            .map(|&i| rows[i].iter().cloned().map(Rational::from_integer).collect())
            .collect(),
    )
    .ok()?;
    let kinv = k.inverse().ok()?;
    let mut rays: Vec<Ray> = (0..n)
        .map(|j| {
            let col = crate::exact::Vector((0..n).map(|i| kinv.get(i, j).clone()).collect());
            let v = sign_adjust(col.primitive_integer(), &rows[basis[j]]);
            let zeros = Bitset::from_indices(m, basis.iter().copied().filter(|&b| b != basis[j]));
            Ray { v, zeros }
        })
        .collect();

    let mut processed = Bitset::from_indices(m, basis.iter().copied());
    for (i, row) in rows.iter().enumerate() {
        if processed.contains(i) {
            continue;
        }
        let vals: Vec<BigInt> = rays.iter().map(|r| dot_int(row, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&j| vals[j].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&j| vals[j].is_negative()).collect();

        let mut fresh: Vec<Ray> = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = rays[p].zeros.and(&rays[q].zeros);
                if common.count() + 2 < n {
                    continue;
                }
                let dominated = rays.iter().enumerate().any(|(t, r)| {
                    t != p && t != q && r.zeros.is_superset(&common)
                });
                if dominated {
                    continue;
                }
                let vp = &vals[p];
                let vq = -&vals[q];
                let v: Vec<BigInt> = rays[q]
                    .v
                    .iter()
                    .zip(&rays[p].v)
                    .map(|(a, b)| vp * a + &vq * b)
                    .collect();
                let mut zeros = common;
                zeros.insert(i);
                fresh.push(Ray {
                    v: primitive(v),
                    zeros,
                });
            }
        }

        let mut next: Vec<Ray> = Vec::with_capacity(rays.len() + fresh.len());
        for (j, mut r) in rays.into_iter().enumerate() {
            if vals[j].is_zero() {
                r.zeros.insert(i);
                next.push(r);
            } else if vals[j].is_positive() {
                next.push(r);
            }
        }
        next.extend(fresh);
        rays = next;
        processed.insert(i);
    }
    Some(rays.into_iter().map(|r| r.v).collect())
}
