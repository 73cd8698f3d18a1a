use criterion::{black_box, criterion_group, criterion_main, Criterion};
use qplane::climit::{classical_chart, gauss_curvature};
use qplane::connection::{solve_sigma, MetricTensor};
use qplane::presets::{self, PresetId};
use qplane::verify::run_checks;
use qplane_bench::{dense_element, sessions};

fn plane_product(c: &mut Criterion) {
    let a = dense_element(3);
    let b = dense_element(2);
    c.bench_function("plane product 49 x 25 terms", |bench| bench.iter(|| black_box(&a) * black_box(&b)));
}

fn build_presets(c: &mut Criterion) {
    let mut group = c.benchmark_group("build");
    for id in PresetId::ALL {
        group.bench_function(id.name(), |bench| bench.iter(|| presets::build(black_box(id), None).unwrap()));
    }
    group.finish();
}

fn verify_presets(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    for s in sessions() {
        group.bench_function(s.id.name(), |bench| bench.iter(|| run_checks(&s, None, None).unwrap()));
    }
    group.finish();
}

fn connection_and_limit(c: &mut Criterion) {
    let calc = presets::build(PresetId::Calc2a, None).unwrap();
    let g = MetricTensor::euclidean(2);
    c.bench_function("solve sigma calc2a", |bench| bench.iter(|| solve_sigma(calc.c(), &g).unwrap()));
    c.bench_function("curvature calc2b", |bench| {
        let calc = presets::build(PresetId::Calc2b, None).unwrap();
        bench.iter(|| gauss_curvature(&classical_chart(&calc).unwrap().frame).unwrap())
    });
}

criterion_group!(benches, plane_product, build_presets, verify_presets, connection_and_limit);
criterion_main!(benches);
