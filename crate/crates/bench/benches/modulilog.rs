use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use modulilog::{
    check_avoidance, faces, iterated_integral, mzv, vertices, AVector, PathSpec, PolylogIndex, QuadOptions,
};
use num_complex::Complex64;

fn combinatorics(c: &mut Criterion) {
    c.bench_function("vertices n=5", |b| b.iter(|| vertices(black_box(5)).unwrap()));
    c.bench_function("faces n=4 k=2", |b| b.iter(|| faces(black_box(4), 2).unwrap()));
    let a = AVector::new(vec![
        Complex64::new(0.5, 0.3),
        Complex64::new(2.0, -1.0),
        Complex64::new(-0.4, 0.0),
        Complex64::new(0.0, 0.0),
    ])
    .unwrap();
    c.bench_function("check_avoidance n=4", |b| b.iter(|| check_avoidance(black_box(&a)).unwrap()));
}

fn numerics(c: &mut Criterion) {
    let idx = PolylogIndex::new(vec![1, 2]).unwrap();
    c.bench_function("mzv (1,2) tol=1e-10", |b| b.iter(|| mzv(black_box(&idx), 1e-10).unwrap()));
    let path = PathSpec::straight();
    let opts = QuadOptions::default();
    let a = AVector::from_real(&[1.0, 0.0]).unwrap();
    c.bench_function("iterated_integral (1,0)", |b| b.iter(|| iterated_integral(black_box(&a), &path, &opts).unwrap()));
    let a3 = AVector::from_real(&[1.0 / 0.9801, 1.0 / 0.99, 0.0]).unwrap();
    c.bench_function("iterated_integral weight 3", |b| {
        b.iter(|| iterated_integral(black_box(&a3), &path, &opts).unwrap())
    });
}

criterion_group!(benches, combinatorics, numerics);
criterion_main!(benches);
