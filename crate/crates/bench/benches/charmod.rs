use std::hint::black_box;

use charmod::anomaly::{build_twisted_class, verify_all, IdentityId, Route, TwistParams, TwistedKind};
use charmod::exactmath::{qs_exp, qs_mul};
use charmod::thetamod::{e8_lattice_theta, eisenstein};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn series(c: &mut Criterion) {
    let mut g = c.benchmark_group("series");
    for n in [10u32, 20, 40] {
        let e4 = eisenstein(4, n).unwrap();
        let e6 = eisenstein(6, n).unwrap();
        g.bench_with_input(BenchmarkId::new("mul_e4_e6", n), &n, |b, _| b.iter(|| qs_mul(black_box(&e4), black_box(&e6)).unwrap()));
        let shifted = e4.sub(&e4.truncate(0)).unwrap();
        g.bench_with_input(BenchmarkId::new("exp", n), &n, |b, _| b.iter(|| qs_exp(black_box(&shifted)).unwrap()));
    }
    g.finish();
}

fn twisted(c: &mut Criterion) {
    let mut g = c.benchmark_group("build_twisted_class");
    g.sample_size(10);
    for kind in [TwistedKind::Qc, TwistedKind::Wc] {
        for route in [Route::Adams, Route::Theta] {
            let id = format!("{kind}/{route:?}");
            g.bench_function(BenchmarkId::new(id, 3), |b| {
                b.iter(|| build_twisted_class(kind, &TwistParams::symbolic(), 3, route).unwrap())
            });
        }
    }
    g.finish();
}

fn e8(c: &mut Criterion) {
    let mut g = c.benchmark_group("e8_lattice_theta");
    g.sample_size(10);
    for n in [4u32, 6] {
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| b.iter(|| e8_lattice_theta(n).unwrap()));
    }
    g.finish();
}

fn registry(c: &mut Criterion) {
    let mut g = c.benchmark_group("verify_all");
    g.sample_size(10);
    g.bench_function("order6", |b| b.iter(|| verify_all(&IdentityId::ALL, 6).unwrap()));
    g.finish();
}

criterion_group!(benches, series, twisted, e8, registry);
criterion_main!(benches);
