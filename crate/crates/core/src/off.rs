//! Geomview OFF export for cells of dimension at most 3.
//!
//! Coordinates are rendered as decimals with 12 significant digits. This is
//! the only place exact values are turned into floating point, and it is for
//! display only.

use std::fmt::Write;

use num_traits::{ToPrimitive, Zero};

use crate::error::PolytopeError;
use crate::exact::{Rational, Vector};
use crate::polytope::belts::angle_cmp;
use crate::polytope::VPolytope;

pub const OFF_MAX_DIM: usize = 3;

/// Decimal rendering with 12 significant digits, trailing zeros removed.
pub fn decimal12(q: &Rational) -> String {
    if q.is_zero() {
        return "0".into();
    }
    let f = q.to_f64().unwrap_or(f64::NAN);
    let sci = format!("{f:.11e}");
    let exp: i32 = sci.split_once('e').map_or(0, |(_, e)| e.parse().unwrap_or(0));
    let out = if (-5..12).contains(&exp) {
        let prec = (11 - exp).max(0) as usize;
        format!("{f:.prec$}")
    } else {
        let (m, e) = sci.split_once('e').unwrap();
        return format!("{}e{e}", trim_zeros(m));
    };
    trim_zeros(&out)
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

fn cross3(a: &Vector, b: &Vector) -> Vector {
    Vector(vec![
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ])
}

/// Orders the vertices of a planar polygon counter-clockwise as seen from the
/// side `normal` points to (`normal` is `None` in the plane itself).
fn cyclic(v: &VPolytope, idx: &[usize], normal: Option<&Vector>) -> Vec<usize> {
    let c = v.centroid_of(idx);
    let rel = |i: usize| &v.vertices()[i] - &c;
    let coords: Vec<(usize, (Rational, Rational))> = match normal {
        None => idx
            .iter()
            .map(|&i| {
                let r = rel(i);
                (i, (r[0].clone(), r[1].clone()))
            })
            .collect(),
        Some(n) => {
            let u = rel(idx[0]);
            let w = cross3(n, &u);
            idx.iter()
                .map(|&i| {
                    let r = rel(i);
                    (i, (r.dot_unchecked(&u), r.dot_unchecked(&w)))
                })
                .collect()
        }
    };
    let mut coords = coords;
    coords.sort_by(|a, b| angle_cmp(&a.1, &b.1));
    coords.into_iter().map(|(i, _)| i).collect()
}

/// OFF text for a cell of dimension 1, 2 or 3. Lower dimensions are padded
/// with zero coordinates. A polygon is written as one face; a segment has no
/// faces.
pub fn to_off(v: &VPolytope) -> Result<String, PolytopeError> {
    let d = v.dim();
    if d > OFF_MAX_DIM {
        return Err(PolytopeError::DimensionCap {
            dim: d,
            cap: OFF_MAX_DIM,
        });
    }
    if !v.is_full_dimensional() {
        return Err(PolytopeError::NotFullDimensional);
    }
    let faces: Vec<Vec<usize>> = match d {
        3 => v
            .facets()
            .iter()
            .map(|&f| cyclic(v, &v.incidence(f), Some(&v.h().ineqs[f].normal)))
            .collect(),
        2 => vec![cyclic(v, &(0..v.vertices().len()).collect::<Vec<_>>(), None)],
        _ => Vec::new(),
    };
    let mut out = String::from("OFF\n");
    writeln!(out, "{} {} 0", v.vertices().len(), faces.len()).unwrap();
    for x in v.vertices() {
        let cols: Vec<String> = (0..3)
            .map(|k| if k < d { decimal12(&x[k]) } else { "0".into() })
            .collect();
        writeln!(out, "{}", cols.join(" ")).unwrap();
    }
    for f in &faces {
        let idx: Vec<String> = f.iter().map(usize::to_string).collect();
        writeln!(out, "{} {}", f.len(), idx.join(" ")).unwrap();
    }
    Ok(out)
}
