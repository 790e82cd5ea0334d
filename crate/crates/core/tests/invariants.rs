mod common;

use num_traits::{One, Zero};
use parallelotope::exact::{self, frac, int, solve_linear};
use parallelotope::extension::{self, dual_set_with, voronoi_of_sum_form, Direction};
use parallelotope::lattice::{self, coset_minima_with, FormDocument};
use parallelotope::polytope::{self, DEFAULT_VREP_CAP};
use parallelotope::{LatticeVector, Matrix, QuadForm, Rational, Strategy as Schedule, Vector, VoronoiCell};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn int_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    proptest::collection::vec(-5i64..=5, rows * cols).prop_map(move |xs| {
        let rows: Vec<Vec<Rational>> = xs.chunks(cols).map(|r| r.iter().map(|&x| int(x)).collect()).collect();
        Matrix::from_rows(rows).unwrap()
    })
}

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=7).prop_map(|(n, d)| frac(n, d))
}

fn form_from_seed(seed: u64, d: usize) -> QuadForm {
    common::random_form(&mut ChaCha8Rng::seed_from_u64(seed), d)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn solve_recovers_x(m in int_matrix(3, 3), x in proptest::collection::vec(rational(), 3)) {
        prop_assume!(!m.determinant().unwrap().is_zero());
        let x = Vector(x);
        let rhs = m.mul_vec(&x).unwrap();
        prop_assert_eq!(solve_linear(&m, &rhs).unwrap(), x);
    }

    #[test]
    fn rank_of_transpose(m in int_matrix(3, 5)) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn inverse_is_two_sided(m in int_matrix(3, 3)) {
        prop_assume!(!m.determinant().unwrap().is_zero());
        let inv = m.inverse().unwrap();
        prop_assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(3));
        prop_assert_eq!(inv.mul(&m).unwrap(), Matrix::identity(3));
    }

    #[test]
    fn gram_of_a_basis_is_positive_definite(m in int_matrix(3, 3)) {
        let g = m.transpose().mul(&m).unwrap();
        let nonsingular = !m.determinant().unwrap().is_zero();
        prop_assert_eq!(g.is_positive_definite().unwrap(), nonsingular);
        if nonsingular {
            prop_assert!(!g.scale(&int(-1)).is_positive_definite().unwrap());
        }
    }

    #[test]
    fn rational_strings_round_trip(q in rational()) {
        prop_assert_eq!(exact::parse_rational(&exact::format_rational(&q)).unwrap(), q);
    }

    #[test]
    fn contact_vectors_are_symmetric_and_bounded(seed in any::<u64>(), d in 2usize..=4) {
        let form = form_from_seed(seed, d);
        let cs = lattice::coset_minima(&form).unwrap();
        let all = cs.contact_vectors();
        for p in &all {
            prop_assert!(all.binary_search(&p.neg()).is_ok());
            prop_assert_eq!(cs.class_of(p).unwrap().min_norm.clone(), form.eval(p).unwrap());
        }
        let normals = cs.facet_normals();
        prop_assert!(normals.len() <= 2 * ((1 << d) - 1));
        prop_assert!(normals.len() >= 2 * d);
    }

    #[test]
    fn strategies_agree(seed in any::<u64>(), d in 2usize..=4) {
        let form = form_from_seed(seed, d);
        let seq = coset_minima_with(&form, 8, Schedule::Sequential).unwrap();
        let par = coset_minima_with(&form, 8, Schedule::Parallel).unwrap();
        prop_assert_eq!(&seq, &par);
        let normals = seq.facet_normals();
        prop_assert_eq!(
            dual_set_with(&normals, Schedule::Sequential).unwrap(),
            dual_set_with(&normals, Schedule::Parallel).unwrap()
        );
    }

    #[test]
    fn dual_set_is_symmetric_and_exact(seed in any::<u64>(), d in 2usize..=4) {
        let form = form_from_seed(seed, d);
        let normals = lattice::coset_minima(&form).unwrap().facet_normals();
        let ds = extension::dual_set(&normals).unwrap();
        for e in &ds.members {
            prop_assert!(ds.contains(&e.neg()));
            prop_assert!(normals.iter().all(|p| p.dot_int(e).abs() <= 1));
        }
    }

    #[test]
    fn rank_one_bridge(seed in any::<u64>(), d in 2usize..=3, b in 1i64..=5) {
        let form = form_from_seed(seed, d);
        let cs = lattice::coset_minima(&form).unwrap();
        let ds = extension::dual_set(&cs.facet_normals()).unwrap();
        for e in &ds.members {
            let dir = Direction::new(e.to_vector(), int(b)).unwrap();
            for p in extension::p_e_set(&cs.contact_vectors(), &e.to_vector()) {
                prop_assert_eq!(extension::a_e(&p, &dir), extension::f_e(&p, &dir));
            }
        }
    }

    #[test]
    fn facet_normals_stable_in_b(seed in any::<u64>(), d in 2usize..=3) {
        let form = form_from_seed(seed, d);
        let cs = lattice::coset_minima(&form).unwrap();
        let ds = extension::dual_set(&cs.facet_normals()).unwrap();
        if let Some(e) = ds.members.first() {
            let sets: Vec<Vec<LatticeVector>> = [frac(1, 2), int(1), int(3), int(10)]
                .into_iter()
                .map(|b| {
                    let dir = Direction::new(e.to_vector(), b).unwrap();
                    voronoi_of_sum_form(&form, &dir, 0).unwrap().normals
                })
                .collect();
            prop_assert!(sets.windows(2).all(|w| w[0] == w[1]), "e={} {:?}", e, sets);
        }
    }

    #[test]
    fn subset_property_on_shared_normals(seed in any::<u64>(), s1 in 1i64..=4, s2 in 1i64..=4) {
        let form = form_from_seed(seed, 3);
        let normals = lattice::coset_minima(&form).unwrap().facet_normals();
        let h1 = polytope::build_cell(&form, &normals).unwrap();
        let other = form_from_seed(seed.wrapping_add(1), 3);
        let ineqs = normals
            .iter()
            .map(|p| polytope::Inequality::new(p.to_vector(), other.eval(p).unwrap() * int(s1) + int(s2)))
            .collect();
        let h2 = polytope::HPolytope::new(3, ineqs).unwrap();
        let out = extension::subset_check(&h1, &h2, None).unwrap();
        prop_assert!(out.holds, "{:?}", out.witness);
    }

    #[test]
    fn forward_direction_on_random_forms(seed in any::<u64>()) {
        let form = form_from_seed(seed, 3);
        let cell = VoronoiCell::new(form.clone(), DEFAULT_VREP_CAP).unwrap();
        let ds = extension::dual_set(&cell.normals).unwrap();
        if let Some(e) = ds.members.last() {
            let r = extension::check_theorem_on_cell(
                &cell,
                &e.to_vector(),
                &[Rational::one()],
                &extension::CheckOptions::default(),
            )
            .unwrap();
            prop_assert!(r.invariants_hold, "{:?}", r.violations);
            prop_assert!(r.samples[0].equal);
        }
    }
}

#[test]
fn form_documents_round_trip() {
    let f = lattice::catalog("An*", Some(3)).unwrap();
    let json = serde_json::to_string(&f.to_document()).unwrap();
    let back: FormDocument = serde_json::from_str(&json).unwrap();
    let g = QuadForm::from_document(back).unwrap();
    assert_eq!(g, f);
    assert_eq!(serde_json::to_string(&g.to_document()).unwrap(), json);
}

#[test]
fn type_three_normals_are_orthogonal_and_facets() {
    for label in ["A3", "D4", "A3*"] {
        let (name, n) = lattice::parse_catalog_name(label).unwrap();
        let cell = VoronoiCell::new(lattice::catalog(&name, n).unwrap(), DEFAULT_VREP_CAP).unwrap();
        let v = cell.vertices().unwrap();
        let ds = extension::dual_set(&cell.normals).unwrap();
        for e in &ds.members {
            let dir = Direction::new(e.to_vector(), int(1)).unwrap();
            let sum = extension::sum_with_segment(v, &dir).unwrap();
            for q in &sum.swept {
                assert!(q.normal.dot(&dir.e).unwrap().is_zero(), "{label} e={e}");
                assert!(sum.h.ineqs.contains(q));
            }
            assert!(sum.v.is_full_dimensional());
            assert_eq!(sum.v.facets().len(), sum.h.ineqs.len());
        }
    }
}
