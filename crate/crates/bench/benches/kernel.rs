use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use permorb_core::coeff::{self, Idx};
use permorb_core::kernel::{Poly, Var};

fn polynomial_product(c: &mut Criterion) {
    let a = (0..12).fold(Poly::one(), |acc, s| &acc * &Poly::var_plus(Var::Z, s));
    let b = &Poly::var(Var::K) + &Poly::var(Var::C);
    c.bench_function("poly/degree12_times_linear", |bench| bench.iter(|| black_box(&a) * black_box(&b)));
}

fn symbolic_coefficients(c: &mut Criterion) {
    c.bench_function("coeff/h_weight1_symbolic", |bench| {
        bench.iter(|| coeff::h_weight1(Idx::M, black_box(3), black_box(2)).unwrap())
    });
    c.bench_function("coeff/gamma_matrix_symbolic", |bench| bench.iter(|| coeff::gamma_matrix(Idx::M).unwrap()));
}

fn determinants(c: &mut Criterion) {
    let mut g = c.benchmark_group("determinant");
    g.sample_size(10);
    g.bench_function("weight1", |bench| bench.iter(permorb_core::verify::weight1_determinant));
    g.bench_function("gamma", |bench| {
        bench.iter(|| coeff::det2(&coeff::gamma_matrix(Idx::M).unwrap()))
    });
    g.finish();
}

criterion_group!(benches, polynomial_product, symbolic_coefficients, determinants);
criterion_main!(benches);
