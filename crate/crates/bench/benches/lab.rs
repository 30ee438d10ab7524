use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_traits::Zero;

use symquery::algos::{verify_exact, Algorithm};
use symquery::identities::binom_det;
use symquery::polydeg::degree;
use symquery::qsim::XqueryCircuit;
use symquery::symfun::family_dj;
use symquery::{BitString, Rational};

fn lp_degree(c: &mut Criterion) {
    let mut group = c.benchmark_group("degree");
    let eps = Rational::zero();
    for n in [8, 12, 16] {
        let f = family_dj(n, n / 4).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &f, |b, f| {
            b.iter(|| degree(black_box(f), &eps).unwrap())
        });
    }
    group.finish();
}

fn xquery_sim(c: &mut Criterion) {
    let mut group = c.benchmark_group("xquery");
    for m in [8, 16] {
        let circuit = XqueryCircuit::new(m).unwrap();
        let x = BitString::from_mask(m, 0b1011);
        group.bench_with_input(BenchmarkId::new("distribution", m), &x, |b, x| {
            b.iter(|| circuit.distribution(black_box(x)).unwrap())
        });
    }
    group.bench_function("build/12", |b| b.iter(|| XqueryCircuit::new(black_box(12)).unwrap()));
    group.finish();
}

fn dj_verify(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_dj");
    group.sample_size(10);
    for (n, k) in [(8, 1), (10, 2), (12, 2)] {
        let alg = Algorithm::Dj { n, k };
        let f = family_dj(n, k).unwrap();
        group.bench_function(format!("{n},{k}"), |b| b.iter(|| verify_exact(&alg, black_box(&f)).unwrap()));
    }
    group.finish();
}

fn bareiss(c: &mut Criterion) {
    let mut group = c.benchmark_group("binom_det");
    for (n, k) in [(13, 6), (30, 6), (60, 12)] {
        group.bench_function(format!("{n},{k}"), |b| b.iter(|| binom_det(black_box(n), black_box(k)).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, lp_degree, xquery_sim, dj_verify, bareiss);
criterion_main!(benches);
