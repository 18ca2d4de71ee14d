//! Parallel against sequential evaluation of the heavier checks. The
//! sequential numbers come from the runtime switch, so both paths run in
//! the same binary.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hopfrob::builders::{sym3, taft};
use hopfrob::doubles::{check_quasitriangular, classic_r_matrix, drinfeld_double, red_double};
use hopfrob::hopfcore::check_hopf;
use hopfrob::hopffrobenius::build_hf;
use hopfrob::integrals::integral_morphism;
use hopfrob::par;

fn modes() -> [(&'static str, bool); 2] {
    [("parallel", true), ("sequential", false)]
}

fn hopf_axioms(c: &mut Criterion) {
    let dd = drinfeld_double(&taft(2)).unwrap();
    let mut g = c.benchmark_group("check_hopf D(taft 2)");
    g.sample_size(10);
    for (name, on) in modes() {
        par::set_parallel(on);
        g.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| black_box(check_hopf(&dd))));
    }
    g.finish();
    par::set_parallel(true);
}

fn quasitriangular(c: &mut Criterion) {
    let h = taft(2);
    let dd = drinfeld_double(&h).unwrap();
    let r = classic_r_matrix(&h);
    let mut g = c.benchmark_group("check_quasitriangular D(taft 2)");
    g.sample_size(10);
    for (name, on) in modes() {
        par::set_parallel(on);
        g.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| black_box(check_quasitriangular(&dd, &r))));
    }
    g.finish();
    par::set_parallel(true);
}

fn construction(c: &mut Criterion) {
    let t4 = taft(4);
    let hf = build_hf(&sym3()).unwrap();
    let mut g = c.benchmark_group("construction");
    g.sample_size(10);
    for (name, on) in modes() {
        par::set_parallel(on);
        g.bench_function(BenchmarkId::new("integral_morphism taft 4", name), |b| {
            b.iter(|| black_box(integral_morphism(&t4)))
        });
        g.bench_function(BenchmarkId::new("red_double sym 3", name), |b| b.iter(|| black_box(red_double(&hf))));
    }
    g.finish();
    par::set_parallel(true);
}

criterion_group!(benches, hopf_axioms, quasitriangular, construction);
criterion_main!(benches);
