use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use gaussmod::partitions::{box_coeffs, box_coeffs_by_recurrence, GaussianRows};
use gaussmod::quasifit::{fit, CountTable};
use gaussmod::structure::gamma_poly;
use gaussmod::Modulus;

fn coefficient_vectors(c: &mut Criterion) {
    let m = Modulus::new(5).unwrap();
    let mut g = c.benchmark_group("box_coeffs");
    for j in [100usize, 1_000, 10_000] {
        g.bench_with_input(BenchmarkId::new("product", j), &j, |b, &j| {
            b.iter(|| box_coeffs(black_box(j), 4, m))
        });
    }
    g.bench_function("recurrence/1000", |b| {
        b.iter(|| box_coeffs_by_recurrence(black_box(1_000), 4, m))
    });
    g.finish();
}

fn row_sweep(c: &mut Criterion) {
    let m = Modulus::new(5).unwrap();
    c.bench_function("gaussian_rows/k4_to_2000", |b| {
        b.iter(|| {
            let mut rows = GaussianRows::new(4, m);
            while rows.n() < 2_000 {
                rows.advance();
            }
            black_box(rows.row(4).len())
        })
    });
    c.bench_function("count_table/k3_n2000", |b| {
        b.iter(|| CountTable::build(3, m, black_box(2_000)))
    });
}

fn fitting(c: &mut Criterion) {
    let mut g = c.benchmark_group("fit");
    g.sample_size(10);
    g.bench_function("k3_r1_mod5", |b| {
        b.iter(|| fit(3, 1, Modulus::new(5).unwrap()).unwrap())
    });
    g.bench_function("k3_r0_mod4", |b| {
        b.iter(|| fit(3, 0, Modulus::new(4).unwrap()).unwrap())
    });
    g.finish();
}

fn gamma(c: &mut Criterion) {
    c.bench_function("gamma_poly/k4_q108", |b| {
        b.iter(|| gamma_poly(4, black_box(108)).unwrap())
    });
}

criterion_group!(benches, coefficient_vectors, row_sweep, fitting, gamma);
criterion_main!(benches);
