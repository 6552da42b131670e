use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use omegacat::nerve::singular_homology;
use omegacat::zoo::{a_family, sphere};
use omegacat::{abelianize, smith_normal_form, Finite2Category, FiniteCategory};
use omegacat_bench::lcg_matrix;

fn snf(c: &mut Criterion) {
    let mut group = c.benchmark_group("smith_normal_form");
    for n in [4usize, 8, 16] {
        let m = lcg_matrix(n, n as u64);
        group.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| b.iter(|| smith_normal_form(black_box(m))));
    }
    group.finish();
}

fn polygraphic(c: &mut Criterion) {
    c.bench_function("homology_pol/sphere_5", |b| {
        let p = sphere(5);
        b.iter(|| abelianize(black_box(&p)).all_homology())
    });
    c.bench_function("homology_pol/a_4_4", |b| {
        let p = a_family(4, 4);
        b.iter(|| abelianize(black_box(&p)).all_homology())
    });
}

fn singular(c: &mut Criterion) {
    let d3 = FiniteCategory::simplex(3);
    c.bench_function("homology_sing/delta3_h2", |b| b.iter(|| singular_homology(black_box(&d3), 2)));
    let z2 = Finite2Category::double_suspension_cyclic(2);
    c.bench_function("homology_sing/b2z2_h2", |b| b.iter(|| singular_homology(black_box(&z2), 2)));
}

criterion_group!(benches, snf, polygraphic, singular);
criterion_main!(benches);
