//! Minkowski sums of a Voronoi cell with a segment `[-b e, b e]`.
//!
//! The sum is built two ways. Directly: every facet of `P` moves out by
//! `b |<p, e>|`, and every codimension-2 face in the shadow boundary that is
//! transversal to `e` is swept into a new facet whose normal is orthogonal to
//! `e`. Indirectly: as the Voronoi cell of the form `A + b e e^T`. The two
//! agree, and the sum is a parallelotope, exactly when `e` has products `0` or
//! `±1` with every facet normal (for irreducible cells).

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::cell::VoronoiCell;
use crate::error::{ExactError, ExtensionError};
use crate::exact::{self, int, rational_str, Matrix, Rational, Vector};
use crate::lattice::{FormDocument, LatticeVector, QuadForm};
use crate::par::{self, Strategy};
use crate::polytope::{
    self, belts::belts_from_ridges, enumerate_vertices_capped, shadow, HPolytope, Inequality,
    ParallelotopeVerdict, VPolytope,
};

/// Segment direction `e` with weight `b > 0`; the segment is `b·[-e, e]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Direction {
    pub e: Vector,
    #[serde(with = "rational_str")]
    pub b: Rational,
}

impl Direction {
    pub fn new(e: Vector, b: Rational) -> Result<Self, ExtensionError> {
        if e.is_zero() {
            return Err(ExtensionError::ZeroDirection);
        }
        if !b.is_positive() {
            return Err(ExtensionError::NonPositiveWeight);
        }
        Ok(Direction { e, b })
    }

    pub fn from_ints(e: &[i64], b: Rational) -> Result<Self, ExtensionError> {
        Direction::new(Vector::from_ints(e), b)
    }

    pub fn product(&self, p: &LatticeVector) -> Rational {
        p.dot(&self.e)
    }

    /// End points `±b e`.
    pub fn endpoints(&self) -> (Vector, Vector) {
        let be = self.e.scale(&self.b);
        (-&be, be)
    }
}

/// `b <p, e>^2`, with Gram update `b e e^T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankOneForm {
    pub e: Vector,
    pub b: Rational,
}

impl RankOneForm {
    pub fn new(dir: &Direction) -> Self {
        RankOneForm {
            e: dir.e.clone(),
            b: dir.b.clone(),
        }
    }

    pub fn eval(&self, p: &LatticeVector) -> Rational {
        let t = p.dot(&self.e);
        &self.b * &t * &t
    }

    pub fn gram_update(&self) -> Matrix {
        let d = self.e.dim();
        let mut m = Matrix::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                m.set(i, j, &self.b * &self.e[i] * &self.e[j]);
            }
        }
        m
    }
}

/// Support function of the segment: `b |<p, e>|`, zero when orthogonal.
pub fn f_e(p: &LatticeVector, dir: &Direction) -> Rational {
    let t = dir.product(p);
    if t.is_zero() {
        return t;
    }
    &dir.b * &t * &t / t.abs()
}

pub fn a_e(p: &LatticeVector, dir: &Direction) -> Rational {
    RankOneForm::new(dir).eval(p)
}

fn is_unit_product(t: &Rational) -> bool {
    t.is_zero() || t.abs().is_one()
}

/// Normals whose product with `e` lies in `{0, ±1}`.
pub fn p_e_set(normals: &[LatticeVector], e: &Vector) -> Vec<LatticeVector> {
    normals
        .iter()
        .filter(|p| is_unit_product(&p.dot(e)))
        .cloned()
        .collect()
}

/// The segment `b·[-e, e]` written as `{x : <p, x> <= f_e(p)}`. Needs a
/// normal orthogonal to `e` and normals on both sides of it.
pub fn segment_as_polytope(dir: &Direction, normals: &[LatticeVector]) -> Result<HPolytope, ExtensionError> {
    let prods: Vec<Rational> = normals.iter().map(|p| dir.product(p)).collect();
    if !prods.iter().any(Signed::is_positive) || !prods.iter().any(Signed::is_negative) {
        return Err(ExtensionError::MissingSign);
    }
    if !prods.iter().any(Zero::is_zero) {
        return Err(ExtensionError::NoOrthogonalNormal);
    }
    let ineqs = normals
        .iter()
        .map(|p| Inequality::new(p.to_vector(), f_e(p, dir)))
        .collect();
    Ok(HPolytope::new(dir.e.dim(), ineqs)?)
}

// ---------------------------------------------------------------------------
// Dual set

/// Nonzero integer vectors whose products with every facet normal lie in
/// `{0, ±1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualSet {
    pub members: Vec<LatticeVector>,
    #[serde(rename = "basisUsed")]
    pub basis_used: Vec<LatticeVector>,
}

impl DualSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, e: &LatticeVector) -> bool {
        self.members.binary_search(e).is_ok()
    }
}

pub fn in_dual_set(normals: &[LatticeVector], e: &Vector) -> bool {
    normals.iter().all(|p| is_unit_product(&p.dot(e)))
}

/// Greedy lexicographic choice of `d` independent normals.
fn independent_basis(normals: &[LatticeVector], d: usize) -> Vec<LatticeVector> {
    let mut sorted = normals.to_vec();
    sorted.sort();
    let mut basis: Vec<LatticeVector> = Vec::with_capacity(d);
    for p in sorted {
        if basis.len() == d {
            break;
        }
        let mut rows: Vec<Vector> = basis.iter().map(LatticeVector::to_vector).collect();
        rows.push(p.to_vector());
        if Matrix::from_vectors(&rows).unwrap().rank() == rows.len() {
            basis.push(p);
        }
    }
    basis
}

pub fn dual_set(normals: &[LatticeVector]) -> Result<DualSet, ExtensionError> {
    dual_set_with(normals, Strategy::default())
}

/// Every dual-set member is fixed by its products `σ ∈ {0, ±1}^d` with a basis
/// drawn from the normals, so solving for all `3^d` sign patterns and
/// filtering is complete.
pub fn dual_set_with(normals: &[LatticeVector], strategy: Strategy) -> Result<DualSet, ExtensionError> {
    let d = normals.first().map_or(0, LatticeVector::dim);
    let basis = independent_basis(normals, d);
    if d == 0 || basis.len() < d {
        return Err(ExtensionError::RankDeficient);
    }
    let b = Matrix::from_vectors(&basis.iter().map(LatticeVector::to_vector).collect::<Vec<_>>())?;
    let binv = b.inverse()?;
    let total = 3usize.pow(d as u32);
    let mut members: Vec<LatticeVector> = par::filter_map_range(strategy, total, |code| {
        let mut c = code;
        let sigma = Vector(
            (0..d)
                .map(|_| {
                    let s = (c % 3) as i64 - 1;
                    c /= 3;
                    int(s)
                })
                .collect(),
        );
        if sigma.is_zero() {
            return None;
        }
        let e = binv.mul_vec(&sigma).ok()?;
        let ints = e.to_integers()?;
        let lv = LatticeVector(ints.iter().map(|x| i64::try_from(x).unwrap()).collect());
        normals
            .iter()
            .all(|p| p.dot_int(&lv).abs() <= 1)
            .then_some(lv)
    });
    members.sort();
    Ok(DualSet {
        members,
        basis_used: basis,
    })
}

// ---------------------------------------------------------------------------
// Normalization

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status")]
pub enum Normalization {
    /// `e = e_raw / w` has products in `{0, ±1}` with every normal.
    Normalized {
        e: Vector,
        #[serde(with = "rational_str")]
        w: Rational,
    },
    /// Two normals whose products with `e_raw` differ in absolute value.
    CannotNormalize {
        witnesses: (LatticeVector, LatticeVector),
        products: (String, String),
    },
}

impl Normalization {
    pub fn direction(&self) -> Option<&Vector> {
        match self {
            Normalization::Normalized { e, .. } => Some(e),
            Normalization::CannotNormalize { .. } => None,
        }
    }
}

/// Rescales `e_raw` so its nonzero products with the normals become `±1`, if
/// they share one absolute value.
pub fn normalize_direction(e_raw: &Vector, normals: &[LatticeVector]) -> Result<Normalization, ExtensionError> {
    if e_raw.is_zero() {
        return Err(ExtensionError::ZeroDirection);
    }
    let positive: Vec<&LatticeVector> = normals.iter().filter(|p| p.canonical_sign() == **p).collect();
    let mut first: Option<(&LatticeVector, Rational)> = None;
    for p in positive {
        let t = p.dot(e_raw).abs();
        if t.is_zero() {
            continue;
        }
        match &first {
            None => first = Some((p, t)),
            Some((q, w)) if *w != t => {
                return Ok(Normalization::CannotNormalize {
                    witnesses: ((*q).clone(), p.clone()),
                    products: (exact::format_rational(w), exact::format_rational(&t)),
                });
            }
            Some(_) => {}
        }
    }
    let (_, w) = first.ok_or(ExtensionError::RankDeficient)?;
    let e = e_raw.scale(&w.recip());
    if !e.is_integral() || !in_dual_set(normals, &e) {
        return Err(ExtensionError::NotInDualSet(e.to_string()));
    }
    Ok(Normalization::Normalized { e, w })
}

// ---------------------------------------------------------------------------
// The two constructions of P + b z(e)

/// The direct construction with its bookkeeping.
#[derive(Clone, Debug)]
pub struct SegmentSum {
    /// Irredundant inequalities, one per facet.
    pub h: HPolytope,
    pub v: VPolytope,
    /// Inequalities contributed by swept codimension-2 faces.
    pub swept: Vec<Inequality>,
}

/// Facet-by-facet construction of `P + b·[-e, e]`.
pub fn sum_with_segment(cell: &VPolytope, dir: &Direction) -> Result<SegmentSum, ExtensionError> {
    if dir.e.dim() != cell.dim() {
        return Err(ExtensionError::Exact(ExactError::DimensionMismatch {
            expected: cell.dim(),
            found: dir.e.dim(),
        }));
    }
    let h = cell.h();
    let mut ineqs: Vec<Inequality> = cell
        .facets()
        .iter()
        .map(|&i| {
            let q = &h.ineqs[i];
            let t = q.normal.dot_unchecked(&dir.e).abs();
            Inequality::new(q.normal.clone(), &q.support + &dir.b * t)
        })
        .collect();

    let mut swept: BTreeSet<Inequality> = BTreeSet::new();
    for ridge in cell.codim2_faces() {
        if ridge.is_parallel_to(&dir.e) || !shadow::in_shadow_boundary(cell, &ridge, &dir.e) {
            continue;
        }
        for (k, &f) in ridge.tight.iter().enumerate() {
            for &g in &ridge.tight[k + 1..] {
                let (p1, p2) = (&h.ineqs[f].normal, &h.ineqs[g].normal);
                let (t1, t2) = (p1.dot_unchecked(&dir.e), p2.dot_unchecked(&dir.e));
                if !(t1.is_positive() && t2.is_negative() || t1.is_negative() && t2.is_positive()) {
                    continue;
                }
                let q = &p1.scale(&t2.abs()) + &p2.scale(&t1.abs());
                let q = Vector::from_bigints(&q.primitive_integer());
                let support = polytope::support_value(cell, &q)?;
                swept.insert(Inequality::new(q, support));
            }
        }
    }
    let swept: Vec<Inequality> = swept.into_iter().collect();
    ineqs.extend(swept.iter().cloned());
    let all = HPolytope::new(cell.dim(), ineqs)?;
    let v = enumerate_vertices_capped(&all, cell.dim())?;
    let pruned = v.facet_polytope();
    let kept: BTreeSet<Inequality> = pruned.ineqs.iter().cloned().collect();
    let swept = swept.into_iter().filter(|q| kept.contains(q)).collect();
    let v = enumerate_vertices_capped(&pruned, cell.dim())?;
    Ok(SegmentSum { h: pruned, v, swept })
}

/// The Voronoi cell of `A + b e e^T`.
pub fn voronoi_of_sum_form(form: &QuadForm, dir: &Direction, vcap: usize) -> Result<VoronoiCell, ExtensionError> {
    let perturbed = form
        .add_rank_one(&dir.e, &dir.b)
        .expect("A + b e e^T is positive definite for b > 0");
    Ok(VoronoiCell::new(perturbed, vcap)?)
}

/// A vertex present in one polytope and missing from the other.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    /// `"sum"` or `"cell"`: the polytope that has the vertex.
    pub side: String,
    pub vertex: Vector,
}

pub fn compare_vertices(sum: &VPolytope, cell: &VPolytope) -> Option<Discrepancy> {
    if sum.vertices() == cell.vertices() {
        return None;
    }
    let missing = |a: &VPolytope, b: &VPolytope| {
        a.vertices()
            .iter()
            .find(|x| b.vertices().binary_search(x).is_err())
            .cloned()
    };
    missing(sum, cell)
        .map(|vertex| Discrepancy {
            side: "sum".into(),
            vertex,
        })
        .or_else(|| {
            missing(cell, sum).map(|vertex| Discrepancy {
                side: "cell".into(),
                vertex,
            })
        })
}

// ---------------------------------------------------------------------------
// Structural checks

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubsetOutcome {
    pub holds: bool,
    /// `(x1, x2, violated inequality index)` on failure.
    pub witness: Option<(Vector, Vector, usize)>,
    #[serde(rename = "pairsChecked")]
    pub pairs_checked: usize,
}

/// Checks `P(s1) + P(s2) ⊆ P(s1 + s2)` on vertex pairs for two polytopes
/// cut out by the same normals. `samples` caps the number of pairs (all pairs
/// when `None`); pairs are taken in a fixed stride order.
pub fn subset_check(h1: &HPolytope, h2: &HPolytope, samples: Option<usize>) -> Result<SubsetOutcome, ExtensionError> {
    let n1: Vec<&Vector> = h1.ineqs.iter().map(|q| &q.normal).collect();
    let n2: Vec<&Vector> = h2.ineqs.iter().map(|q| &q.normal).collect();
    if h1.dim != h2.dim || n1 != n2 {
        return Err(ExtensionError::NormalSetMismatch);
    }
    let sum = HPolytope {
        dim: h1.dim,
        ineqs: h1
            .ineqs
            .iter()
            .zip(&h2.ineqs)
            .map(|(a, b)| Inequality::new(a.normal.clone(), &a.support + &b.support))
            .collect(),
    };
    let v1 = enumerate_vertices_capped(h1, h1.dim)?;
    let v2 = enumerate_vertices_capped(h2, h2.dim)?;
    let total = v1.vertices().len() * v2.vertices().len();
    let limit = samples.unwrap_or(total).min(total);
    let stride = if limit == 0 { 1 } else { total.div_ceil(limit).max(1) };
    let mut checked = 0;
    for k in (0..total).step_by(stride).take(limit) {
        let x1 = &v1.vertices()[k / v2.vertices().len()];
        let x2 = &v2.vertices()[k % v2.vertices().len()];
        let x = x1 + x2;
        checked += 1;
        if let Some(i) = sum.ineqs.iter().position(|q| q.value(&x) > q.support) {
            return Ok(SubsetOutcome {
                holds: false,
                witness: Some((x1.clone(), x2.clone(), i)),
                pairs_checked: checked,
            });
        }
    }
    Ok(SubsetOutcome {
        holds: true,
        witness: None,
        pairs_checked: checked,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct L8Outcome {
    pub holds: bool,
    /// Transversal codimension-2 faces in the shadow boundary that were checked.
    pub checked: usize,
    pub failures: Vec<String>,
}

/// For `e` in the dual set: every transversal codimension-2 face `G` in the
/// shadow boundary is the contact face `F(p1 + p2)` of its two facet normals,
/// `<p1 + p2, e> = 0`, and (for `d >= 3`) the belt through `G` has length 4.
/// In the plane all vertices share one belt, so the belt condition is not
/// applied there.
pub fn lemma_l8_check(cell: &VoronoiCell, dir: &Direction) -> Result<L8Outcome, ExtensionError> {
    if !in_dual_set(&cell.normals, &dir.e) {
        return Err(ExtensionError::NotInDualSet(dir.e.to_string()));
    }
    let v = cell.vertices()?;
    let ridges = v.codim2_faces();
    let belts = belts_from_ridges(v, &ridges);
    let mut failures = Vec::new();
    let mut checked = 0;
    for (ri, g) in ridges.iter().enumerate() {
        if g.is_parallel_to(&dir.e) || !shadow::in_shadow_boundary(v, g, &dir.e) {
            continue;
        }
        checked += 1;
        let [f1, f2] = g.tight[..] else {
            failures.push(format!("ridge {ri} lies on {} facets", g.tight.len()));
            continue;
        };
        let to_lattice = |f: usize| {
            let ints = v.h().ineqs[f].normal.to_integers().expect("integral normal");
            LatticeVector(ints.iter().map(|x| i64::try_from(x).unwrap()).collect())
        };
        let p = to_lattice(f1).add(&to_lattice(f2));
        if !p.dot(&dir.e).is_zero() {
            failures.push(format!("ridge {ri}: <{p}, e> != 0"));
            continue;
        }
        if !cell.contacts.is_contact(&p) {
            failures.push(format!("ridge {ri}: {p} is not a contact vector"));
            continue;
        }
        let supp = cell.form.eval(&p)?;
        match polytope::contact_face(v, &p.to_vector(), &supp) {
            Ok(Some(face)) if face.vertices == g.vertices => {}
            _ => {
                failures.push(format!("ridge {ri}: F({p}) differs from the ridge"));
                continue;
            }
        }
        if cell.dim() >= 3 {
            let belt = belts.iter().find(|b| b.ridges.contains(&ri)).expect("ridge in a belt");
            if belt.len() != 4 {
                failures.push(format!("ridge {ri} lies in a {}-belt", belt.len()));
            }
        }
    }
    Ok(L8Outcome {
        holds: failures.is_empty(),
        checked,
        failures,
    })
}

// ---------------------------------------------------------------------------
// Equivalence check

#[derive(Clone, Debug, Serialize)]
pub struct InputEcho {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lattice: Option<String>,
    pub form: FormDocument,
    pub e: Vector,
    #[serde(serialize_with = "serialize_rationals")]
    pub b: Vec<Rational>,
}

fn serialize_rationals<S: serde::Serializer>(qs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    Vector(qs.to_vec()).serialize(s)
}

#[derive(Clone, Debug, Serialize)]
pub struct SampleReport {
    #[serde(with = "rational_str")]
    pub b: Rational,
    #[serde(rename = "sumH")]
    pub sum_h: Vec<Inequality>,
    #[serde(rename = "cellH")]
    pub cell_h: Vec<Inequality>,
    pub equal: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub discrepancy: Option<Discrepancy>,
    pub parallelotope: ParallelotopeVerdict,
    /// Facet normals of `a + a_e`, used for the stability check over `b`.
    #[serde(rename = "perturbedFacetNormals")]
    pub perturbed_normals: Vec<LatticeVector>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtensionReport {
    pub input: InputEcho,
    #[serde(rename = "facetNormalCount")]
    pub facet_normal_count: usize,
    pub normalization: Normalization,
    #[serde(rename = "normalizedE")]
    pub normalized_e: Option<Vector>,
    #[serde(rename = "inDualSet")]
    pub in_dual_set: bool,
    /// Normals whose product with the raw direction is outside `{0, ±1}`.
    #[serde(rename = "violatingNormals")]
    pub violating_normals: Vec<LatticeVector>,
    /// `None` when the cell is above the vertex enumeration cap.
    #[serde(rename = "irreducibleInput")]
    pub irreducible_input: Option<bool>,
    /// The input cell is reducible and `e` cannot be normalized, so the
    /// equivalence makes no claim about the sum.
    #[serde(rename = "theoremSilent")]
    pub theorem_silent: bool,
    /// Only the dual-set side was evaluated (dimension above the cap).
    #[serde(rename = "dualSetOnly")]
    pub dual_set_only: bool,
    pub samples: Vec<SampleReport>,
    /// Facet normals of `a + a_e` agree across all sampled `b`.
    #[serde(rename = "bStable")]
    pub b_stable: bool,
    #[serde(rename = "invariantsHold")]
    pub invariants_hold: bool,
    pub violations: Vec<String>,
}

/// Options for [`check_theorem`].
#[derive(Clone, Debug)]
pub struct CheckOptions {
    pub vcap: usize,
    pub strategy: Strategy,
    pub lattice: Option<String>,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            vcap: polytope::DEFAULT_VREP_CAP,
            strategy: Strategy::default(),
            lattice: None,
        }
    }
}

pub fn default_b_samples() -> Vec<Rational> {
    vec![exact::frac(1, 2), int(1), int(3)]
}

/// Runs both directions of the segment-extension equivalence on one form and
/// one direction, for every sampled weight.
pub fn check_theorem(
    form: &QuadForm,
    e_raw: &Vector,
    b_samples: &[Rational],
    opts: &CheckOptions,
) -> Result<ExtensionReport, ExtensionError> {
    let cell = VoronoiCell::with_strategy(form.clone(), opts.vcap, opts.strategy)?;
    check_theorem_on_cell(&cell, e_raw, b_samples, opts)
}

pub fn check_theorem_on_cell(
    cell: &VoronoiCell,
    e_raw: &Vector,
    b_samples: &[Rational],
    opts: &CheckOptions,
) -> Result<ExtensionReport, ExtensionError> {
    if e_raw.dim() != cell.dim() {
        return Err(ExtensionError::Exact(ExactError::DimensionMismatch {
            expected: cell.dim(),
            found: e_raw.dim(),
        }));
    }
    if b_samples.iter().any(|b| !b.is_positive()) {
        return Err(ExtensionError::NonPositiveWeight);
    }
    let normalization = normalize_direction(e_raw, &cell.normals)?;
    let normalized_e = normalization.direction().cloned();
    let in_dual = normalized_e.is_some();
    let violating_normals: Vec<LatticeVector> = cell
        .normals
        .iter()
        .filter(|p| !is_unit_product(&p.dot(e_raw)))
        .cloned()
        .collect();

    let input = InputEcho {
        lattice: opts.lattice.clone(),
        form: cell.form.to_document(),
        e: e_raw.clone(),
        b: b_samples.to_vec(),
    };

    let Some(v) = cell.v.as_ref() else {
        let mut violations = Vec::new();
        let dual = dual_set_with(&cell.normals, opts.strategy)?;
        if dual.is_empty() && in_dual {
            violations.push("normalized direction found although the dual set is empty".into());
        }
        if let (Some(e), true) = (normalized_e.as_ref().and_then(Vector::to_integers), in_dual) {
            let lv = LatticeVector(e.iter().map(|x| i64::try_from(x).unwrap()).collect());
            if !dual.contains(&lv) {
                violations.push(format!("normalized direction {lv} missing from the dual set"));
            }
        }
        return Ok(ExtensionReport {
            input,
            facet_normal_count: cell.normals.len(),
            normalization,
            normalized_e,
            in_dual_set: in_dual,
            violating_normals,
            irreducible_input: None,
            theorem_silent: false,
            dual_set_only: true,
            samples: Vec::new(),
            b_stable: true,
            invariants_hold: violations.is_empty(),
            violations,
        });
    };

    let irreducible = polytope::irreducibility_graph(v)?.connected;
    let theorem_silent = !irreducible && !in_dual;
    let e_used = normalized_e.clone().unwrap_or_else(|| e_raw.clone());

    let samples: Vec<Result<SampleReport, ExtensionError>> = par::map(opts.strategy, b_samples, |b| {
        let dir = Direction::new(e_used.clone(), b.clone())?;
        let sum = sum_with_segment(v, &dir)?;
        let other = voronoi_of_sum_form(&cell.form, &dir, opts.vcap)?;
        let other_v = other.vertices()?;
        let discrepancy = compare_vertices(&sum.v, other_v);
        Ok(SampleReport {
            b: b.clone(),
            sum_h: sum.h.canonical_inequalities(),
            cell_h: other.h.canonical_inequalities(),
            equal: discrepancy.is_none(),
            discrepancy,
            parallelotope: polytope::is_parallelotope(&sum.v),
            perturbed_normals: other.normals,
        })
    });
    let samples = samples.into_iter().collect::<Result<Vec<_>, _>>()?;
    let b_stable = samples
        .windows(2)
        .all(|w| w[0].perturbed_normals == w[1].perturbed_normals);

    let mut violations = Vec::new();
    for s in &samples {
        let b = exact::format_rational(&s.b);
        if in_dual && !s.equal {
            violations.push(format!("b={b}: e is in the dual set but the sum differs from the cell of a + a_e"));
        }
        if in_dual && !s.parallelotope.ok {
            violations.push(format!("b={b}: e is in the dual set but the sum is not a parallelotope"));
        }
        if irreducible && !in_dual && s.parallelotope.ok {
            violations.push(format!("b={b}: irreducible cell, e not normalizable, yet the sum is a parallelotope"));
        }
    }
    Ok(ExtensionReport {
        input,
        facet_normal_count: cell.normals.len(),
        normalization,
        normalized_e,
        in_dual_set: in_dual,
        violating_normals,
        irreducible_input: Some(irreducible),
        theorem_silent,
        dual_set_only: false,
        samples,
        b_stable,
        invariants_hold: violations.is_empty(),
        violations,
    })
}
