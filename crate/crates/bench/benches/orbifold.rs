use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use permorb_core::chars;
use permorb_core::fock::{associativity_check, Engine, FockVector, Heisenberg, Monomial};
use permorb_core::orbifold::{d_probe, FactorizedC2, GenericC2};

fn fock_products(c: &mut Criterion) {
    c.bench_function("fock/associativity_rank2_fresh_engine", |bench| {
        bench.iter(|| {
            let e = Engine::new(Heisenberg::new(2));
            let a = FockVector::from_monomial(Monomial::from_pairs(&[(0, 2), (1, 1)]));
            let b = e.generator(1);
            let u = FockVector::from_monomial(Monomial::from_pairs(&[(0, 2), (0, 1), (1, 1)]));
            associativity_check(&e, &a, &b, &u, 2, 3)
        })
    });
}

fn c2_slices(c: &mut Criterion) {
    let mut g = c.benchmark_group("c2");
    g.sample_size(10);
    g.bench_function("factorized_up_to_weight_14", |bench| {
        bench.iter(|| {
            let c2 = FactorizedC2::new(&Heisenberg::new(1));
            (0..=14).map(|w| c2.slice(w).dim()).sum::<usize>()
        })
    });
    g.bench_function("generic_up_to_weight_7", |bench| {
        bench.iter(|| {
            let c2 = GenericC2::new(Heisenberg::new(1));
            (0..=7).map(|w| c2.slice(w).dim()).sum::<usize>()
        })
    });
    g.bench_function("omega_probe_cutoff_14", |bench| {
        bench.iter(|| {
            let v = Heisenberg::new(1);
            let e = Engine::new(v.clone());
            let c2 = FactorizedC2::new(&v);
            let w = v.conformal_vector();
            d_probe(&c2, &e, &w, &w, 14, 4).unwrap()
        })
    });
    g.finish();
}

fn characters(c: &mut Criterion) {
    c.bench_function("chars/decomposition_k3_n30", |bench| {
        bench.iter(|| chars::decomposition_sides(black_box(3), black_box(30)))
    });
}

criterion_group!(benches, fock_products, c2_slices, characters);
criterion_main!(benches);
