//! Compares the data-parallel polynomial core against its sequential
//! fallback, both directly on large products and through a batch of
//! exponential/logarithm round trips.

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;

use genmat::inner::{exp_ad, log_aut, LogTriple};
use genmat::poly::{Poly, VarSpec};
use genmat::verify::random_p0_free;
use genmat::walg::WElement;

/// (1 + s1 + … + s6)^k: a dense polynomial with multinomial coefficients.
fn dense_poly(k: u32) -> Poly {
    let vars = VarSpec::new(&[
        ("s1", 1),
        ("s2", 1),
        ("s3", 1),
        ("s4", 1),
        ("s5", 1),
        ("s6", 1),
    ]);
    let mut base = Poly::one(&vars);
    for i in 0..vars.len() {
        base = &base + &Poly::var(&vars, i);
    }
    base.pow(k)
}

fn poly_products(c: &mut Criterion) {
    let mut group = c.benchmark_group("polynomial-product");
    group.sample_size(20);
    for k in [3u32, 4, 5] {
        let p = dense_poly(k);
        let terms = p.term_count();
        group.bench_with_input(BenchmarkId::new("sequential", terms), &p, |b, p| {
            b.iter(|| black_box(p.mul_sequential(black_box(p))))
        });
        group.bench_with_input(BenchmarkId::new("parallel", terms), &p, |b, p| {
            b.iter(|| black_box(p.mul_parallel(black_box(p))))
        });
    }
    group.finish();
}

fn round_trip(x: &WElement) -> LogTriple {
    let q = exp_ad(x).expect("zero scalar part");
    log_aut(&q).expect("round trip")
}

fn exp_log_batches(c: &mut Criterion) {
    let vars = VarSpec::tuv();
    let mut rng = ChaCha12Rng::seed_from_u64(11);
    let xs: Vec<WElement> = (0..12)
        .map(|_| random_p0_free(&mut rng, &vars, 2, 10))
        .collect();
    let mut group = c.benchmark_group("exp-log-round-trips");
    group.sample_size(10);
    group.bench_function("sequential", |b| {
        b.iter(|| xs.iter().map(round_trip).collect::<Vec<_>>())
    });
    group.bench_function("parallel", |b| {
        b.iter(|| xs.par_iter().map(round_trip).collect::<Vec<_>>())
    });
    group.finish();
}

criterion_group!(benches, poly_products, exp_log_batches);
criterion_main!(benches);
