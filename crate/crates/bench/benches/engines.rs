use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use gwell_core::engines::{fn_wedge, gw_extract, tn_bell, tn_on_ray, ENGINES};
use gwell_core::ordered::{tn_omega, Ordering};
use gwell_core::series::Ray;
use gwell_core::special::ThetaExpansion;

fn engines_on_ray(c: &mut Criterion) {
    let mut group = c.benchmark_group("tn_on_ray");
    group.sample_size(10);
    for n in 2..=3 {
        let ray = Ray::random_generic(n, 1);
        let th = ThetaExpansion::for_orders(8, 8, n + 1).unwrap();
        for engine in ENGINES {
            group.bench_with_input(BenchmarkId::new(engine, n), &n, |b, &n| b.iter(|| tn_on_ray(engine, n, &ray, &th, 8).unwrap()));
        }
    }
    group.finish();
}

fn symbolic(c: &mut Criterion) {
    let mut group = c.benchmark_group("symbolic");
    group.sample_size(10);
    for n in 2..=4 {
        group.bench_with_input(BenchmarkId::new("bell", n), &n, |b, &n| b.iter(|| tn_bell(n).unwrap()));
        group.bench_with_input(BenchmarkId::new("omega-gw", n), &n, |b, &n| b.iter(|| tn_omega(&Ordering::gw(n)).unwrap()));
    }
    group.finish();
}

fn wedge(c: &mut Criterion) {
    let mut group = c.benchmark_group("wedge");
    group.sample_size(10);
    group.bench_function("F_3 q8 degree 4", |b| b.iter(|| fn_wedge(3, 8, 4).unwrap()));
    group.bench_function("bracket (1,1) q20", |b| b.iter(|| gw_extract(&[1, 1], 20).unwrap()));
    group.finish();
}

criterion_group!(benches, engines_on_ray, symbolic, wedge);
criterion_main!(benches);
