use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use morsekit::fiber::strata_counts;
use morsekit::lp::{feasible_point, max_min_slack};
use morsekit::polytope::build_polytope;
use morsekit::singularity::c_value_via_levels;
use morsekit::support_fn::mu_value;
use morsekit::{extract, ShiftConfig};
use morsekit_bench::{cone_rows, interval, mixed_sign};

fn single_covector(c: &mut Criterion) {
    let (a, g) = mixed_sign();
    let t = extract(&a, &g).unwrap();
    c.bench_function("extract", |b| b.iter(|| extract(black_box(&a), black_box(&g)).unwrap()));
    c.bench_function("mu_value", |b| b.iter(|| mu_value(&a, black_box(&g), ShiftConfig::zero()).unwrap()));
    c.bench_function("c_value_via_levels", |b| b.iter(|| c_value_via_levels(&a, black_box(&g), &t, 2).unwrap()));
    c.bench_function("strata_counts", |b| b.iter(|| strata_counts(&a, black_box(&g), ShiftConfig::zero()).unwrap()));
}

fn lp(c: &mut Criterion) {
    let (rows, n) = cone_rows();
    c.bench_function("lp_fast_path", |b| b.iter(|| feasible_point(black_box(&rows), n).unwrap()));
    c.bench_function("lp_rational", |b| b.iter(|| max_min_slack(black_box(&rows), n)));
}

fn polytopes(c: &mut Criterion) {
    let mut group = c.benchmark_group("build_polytope");
    group.sample_size(10);
    for n in [4, 5] {
        let a = interval(n);
        group.bench_function(format!("interval_{n}"), |b| {
            b.iter(|| build_polytope(&a, ShiftConfig::unit_interval(&a), 7).unwrap())
        });
    }
    let (a, _) = mixed_sign();
    group.bench_function("mixed_sign", |b| b.iter(|| build_polytope(&a, ShiftConfig::zero(), 7).unwrap()));
    group.finish();
}

criterion_group!(benches, single_covector, lp, polytopes);
criterion_main!(benches);
