use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use parallelotope::extension::{self, check_theorem_on_cell, CheckOptions};
use parallelotope::lattice::{self, catalog};
use parallelotope::polytope::DEFAULT_VREP_CAP;
use parallelotope::{Strategy, VoronoiCell};

const STRATEGIES: [(&str, Strategy); 2] = [("sequential", Strategy::Sequential), ("parallel", Strategy::Parallel)];

fn class_minima(c: &mut Criterion) {
    let mut g = c.benchmark_group("coset_minima");
    g.sample_size(10);
    for label in ["D5", "E7"] {
        let (name, n) = lattice::parse_catalog_name(label).unwrap();
        let form = catalog(&name, n).unwrap();
        for (tag, s) in STRATEGIES {
            g.bench_with_input(BenchmarkId::new(tag, label), &form, |b, f| {
                b.iter(|| lattice::coset_minima_with(f, 8, s).unwrap())
            });
        }
    }
    g.finish();
}

fn dual_sets(c: &mut Criterion) {
    let mut g = c.benchmark_group("dual_set");
    g.sample_size(10);
    for label in ["E7", "E7*"] {
        let form = catalog(label, None).unwrap();
        let normals = lattice::coset_minima(&form).unwrap().facet_normals();
        for (tag, s) in STRATEGIES {
            g.bench_with_input(BenchmarkId::new(tag, label), &normals, |b, ns| {
                b.iter(|| extension::dual_set_with(ns, s).unwrap())
            });
        }
    }
    g.finish();
}

/// Every dual-set direction of A3 and D4 through the full check.
fn check_sweep(c: &mut Criterion) {
    let mut g = c.benchmark_group("check_sweep");
    g.sample_size(10);
    for (label, n) in [("An", 3), ("Dn", 4)] {
        let cell = VoronoiCell::new(catalog(label, Some(n)).unwrap(), DEFAULT_VREP_CAP).unwrap();
        let members = extension::dual_set(&cell.normals).unwrap().members;
        let bs = extension::default_b_samples();
        for (tag, s) in STRATEGIES {
            let opts = CheckOptions {
                strategy: s,
                ..CheckOptions::default()
            };
            let id = lattice::catalog_label(label, Some(n));
            g.bench_function(BenchmarkId::new(tag, id), |b| {
                b.iter(|| {
                    parallelotope::par::map(s, &members, |e| {
                        check_theorem_on_cell(&cell, &e.to_vector(), &bs, &opts).unwrap().invariants_hold
                    })
                })
            });
        }
    }
    g.finish();
}

criterion_group!(benches, class_minima, dual_sets, check_sweep);
criterion_main!(benches);
