//! Independent oracles shared by the integration tests. None of these call
//! into the enumeration code they check.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use parallelotope::exact::{self, frac, int};
use parallelotope::lattice::ContactVectorSet;
use parallelotope::polytope::Inequality;
use parallelotope::{LatticeVector, Matrix, QuadForm, Rational, Vector};
use rand::Rng;

/// Largest box half-width the scan oracle accepts.
pub const BOX_LIMIT: i64 = 6;

/// Random positive definite form `B^T B + D` with small integer `B` and a
/// diagonal `D` of positive fractions.
pub fn random_form<R: Rng>(rng: &mut R, d: usize) -> QuadForm {
    loop {
        let b: Vec<Vec<i64>> = (0..d)
            .map(|_| (0..d).map(|_| rng.gen_range(-2..=2)).collect())
            .collect();
        let mut g = Matrix::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                let s: i64 = (0..d).map(|k| b[k][i] * b[k][j]).sum();
                g.set(i, j, int(s));
            }
        }
        for i in 0..d {
            let extra = frac(rng.gen_range(1..=4), rng.gen_range(1..=3));
            let v = g.get(i, i) + extra;
            g.set(i, i, v);
        }
        if let Ok(q) = QuadForm::new(g) {
            return q;
        }
    }
}

fn isqrt_floor(x: &Rational) -> i64 {
    let mut k = x.to_f64().unwrap().sqrt().floor() as i64;
    while int(k) * int(k) > *x {
        k -= 1;
    }
    while int(k + 1) * int(k + 1) <= *x {
        k += 1;
    }
    k
}

fn eval(g: &Matrix, p: &[i64]) -> Rational {
    let d = p.len();
    let mut s = Rational::zero();
    for i in 0..d {
        for j in 0..d {
            if p[i] != 0 && p[j] != 0 {
                s += g.get(i, j) * int(p[i] * p[j]);
            }
        }
    }
    s
}

/// Per-coordinate box bound covering every class minimum, or `None` when it
/// exceeds [`BOX_LIMIT`]. Every class has a 0/1 representative, so the
/// largest such norm `R` bounds every class minimum, and `a(p) <= R` forces
/// `|p_i| <= sqrt(R (A^{-1})_ii)`.
pub fn box_bound(form: &QuadForm) -> Option<Vec<i64>> {
    let d = form.dim();
    let g = form.gram();
    let r = (1u32..1 << d)
        .map(|m| {
            let p: Vec<i64> = (0..d).map(|i| i64::from((m >> i) & 1)).collect();
            eval(g, &p)
        })
        .max()
        .unwrap();
    let inv = g.inverse().unwrap();
    let bounds: Vec<i64> = (0..d).map(|i| isqrt_floor(&(&r * inv.get(i, i)))).collect();
    bounds.iter().all(|&b| b <= BOX_LIMIT).then_some(bounds)
}

/// Class minima by exhaustive scan: mask -> (minimum, sorted minimisers).
pub fn scan_minima(form: &QuadForm, bounds: &[i64]) -> BTreeMap<u32, (Rational, Vec<LatticeVector>)> {
    let d = form.dim();
    let den = exact::common_denominator(form.gram().row_vectors().iter().flat_map(|r| r.0.iter()));
    let gi: Vec<Vec<i64>> = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| (form.gram().get(i, j) * Rational::from(den.clone())).to_integer().to_i64().unwrap())
                .collect()
        })
        .collect();
    let mut best: BTreeMap<u32, (i64, Vec<LatticeVector>)> = BTreeMap::new();
    let mut x: Vec<i64> = bounds.iter().map(|b| -b).collect();
    loop {
        let mask = x
            .iter()
            .enumerate()
            .fold(0u32, |m, (i, &c)| m | (u32::from(c.rem_euclid(2) == 1) << i));
        if mask != 0 {
            let mut n = 0i64;
            for i in 0..d {
                for j in 0..d {
                    n += gi[i][j] * x[i] * x[j];
                }
            }
            let entry = best.entry(mask).or_insert((i64::MAX, Vec::new()));
            if n < entry.0 {
                *entry = (n, vec![LatticeVector(x.clone())]);
            } else if n == entry.0 {
                entry.1.push(LatticeVector(x.clone()));
            }
        }
        let mut i = 0;
        loop {
            if i == d {
                return best
                    .into_iter()
                    .map(|(m, (n, mut v))| {
                        v.sort();
                        (m, (Rational::new(BigInt::from(n), den.clone()), v))
                    })
                    .collect();
            }
            x[i] += 1;
            if x[i] <= bounds[i] {
                break;
            }
            x[i] = -bounds[i];
            i += 1;
        }
    }
}

/// First difference between enumerated class minima and the scan, if any.
pub fn compare_with_scan(cs: &ContactVectorSet, scan: &BTreeMap<u32, (Rational, Vec<LatticeVector>)>) -> Option<String> {
    if cs.classes.len() != scan.len() {
        return Some(format!("{} classes vs {} scanned", cs.classes.len(), scan.len()));
    }
    for c in &cs.classes {
        let Some((n, v)) = scan.get(&c.mask()) else {
            return Some(format!("class {} missing from scan", c.mask()));
        };
        if *n != c.min_norm || *v != c.minima || c.relevant != (v.len() == 2) {
            return Some(format!("class {:?}: {:?} vs scan {:?}", c.class, c.minima, v));
        }
    }
    None
}

/// Facets of the convex hull of 3-dimensional points by brute force over
/// point triples: `(primitive normal, support)` after scaling all points by
/// their common denominator, which is returned too.
pub fn hull3_facets(points: &[Vector]) -> (BigInt, BTreeSet<(Vec<i128>, i128)>) {
    let den = exact::common_denominator(points.iter().flat_map(|p| p.0.iter()));
    let q = Rational::from(den.clone());
    let mut pts: Vec<[i128; 3]> = points
        .iter()
        .map(|p| {
            let s = p.scale(&q);
            [0, 1, 2].map(|k| s[k].to_integer().to_i128().unwrap())
        })
        .collect();
    pts.sort_unstable();
    pts.dedup();
    let sub = |a: &[i128; 3], b: &[i128; 3]| [a[0] - b[0], a[1] - b[1], a[2] - b[2]];
    let cross = |a: [i128; 3], b: [i128; 3]| {
        [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
    };
    let dot = |a: &[i128; 3], b: &[i128; 3]| a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    let mut out = BTreeSet::new();
    let n = pts.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let mut nv = cross(sub(&pts[j], &pts[i]), sub(&pts[k], &pts[i]));
                if nv == [0, 0, 0] {
                    continue;
                }
                let g = nv.iter().fold(0i128, |g, &x| g.gcd(&x));
                nv = nv.map(|x| x / g);
                let s = dot(&nv, &pts[i]);
                let (mut above, mut below) = (false, false);
                for p in &pts {
                    let t = dot(&nv, p);
                    above |= t > s;
                    below |= t < s;
                    if above && below {
                        break;
                    }
                }
                match (above, below) {
                    (false, _) => {
                        out.insert((nv.to_vec(), s));
                    }
                    (true, false) => {
                        out.insert((nv.iter().map(|x| -x).collect(), -s));
                    }
                    _ => {}
                }
            }
        }
    }
    (den, out)
}

/// Canonical inequalities rescaled to the oracle's units.
pub fn scaled_inequalities(ineqs: &[Inequality], den: &BigInt) -> BTreeSet<(Vec<i128>, i128)> {
    ineqs
        .iter()
        .map(|q| {
            let c = q.canonical();
            let n: Vec<i128> = c.normal.0.iter().map(|x| x.to_integer().to_i128().unwrap()).collect();
            let s = &c.support * Rational::from(den.clone());
            assert!(s.is_integer(), "support {} not on the scaled grid", exact::format_rational(&s));
            (n, s.to_integer().to_i128().unwrap())
        })
        .collect()
}
