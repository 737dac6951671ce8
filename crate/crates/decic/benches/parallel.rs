//! Rayon-parallel drivers vs. their sequential twins on a mid-sized
//! instance. Run with `cargo bench -p decic`.

use std::collections::BTreeSet;
use std::time::Duration;

use criterion::{criterion_group, criterion_main, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use decic::{
    check_condition_c, code_to_certificate, simulate, simulate_seq, verify_rank, verify_rank_seq,
    verify_weight, verify_weight_seq, ErrorProfile, FieldMatrix, IndexCode, PrimeField, Problem,
};

/// Deterministic mid-size instance: n = m = 10 over F_2, length 14, sparse
/// side information (large χ̄ keeps every receiver busy), two receivers
/// demanding double correction.
fn bench_instance() -> (Problem, ErrorProfile, IndexCode) {
    let field = PrimeField::new(2).unwrap();
    let n = 10;
    let n_len = 14;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let side: Vec<BTreeSet<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| j != i && rng.gen_bool(0.3)).collect())
        .collect();
    let problem = Problem::new(field, n, side, (0..n).collect()).unwrap();
    let mut m = FieldMatrix::zero(field, n, n_len);
    for r in 0..n {
        for c in 0..n_len {
            m.set(r, c, rng.gen_range(0..2) as u8);
        }
    }
    // keep columns nonzero so the certificate route exists
    for c in 0..n_len {
        if (0..n).all(|r| m.get(r, c) == 0) {
            m.set(c % n, c, 1);
        }
    }
    let code = IndexCode::new(m).unwrap();
    let mut deltas = vec![1usize; n];
    deltas[2] = 2;
    deltas[5] = 2;
    (problem, ErrorProfile::new(deltas), code)
}

fn bench_verifiers(c: &mut Criterion) {
    let (p, d, code) = bench_instance();

    let mut group = c.benchmark_group("verify_weight");
    group.measurement_time(Duration::from_secs(10));
    group.bench_function("parallel", |b| {
        b.iter(|| verify_weight(&p, &d, &code).unwrap())
    });
    group.bench_function("sequential", |b| {
        b.iter(|| verify_weight_seq(&p, &d, &code).unwrap())
    });
    group.finish();

    let mut group = c.benchmark_group("verify_rank");
    group.measurement_time(Duration::from_secs(10));
    group.sample_size(20);
    group.bench_function("parallel", |b| {
        b.iter(|| verify_rank(&p, &d, &code).unwrap())
    });
    group.bench_function("sequential", |b| {
        b.iter(|| verify_rank_seq(&p, &d, &code).unwrap())
    });
    group.finish();
}

fn bench_condition_c(c: &mut Criterion) {
    let (p, d, code) = bench_instance();
    let cert = code_to_certificate(&p, &code).unwrap();

    let mut group = c.benchmark_group("condition_c");
    group.measurement_time(Duration::from_secs(10));
    group.sample_size(10);
    group.bench_function("parallel", |b| {
        b.iter(|| check_condition_c(&cert, &p, &d).unwrap())
    });
    group.bench_function("sequential", |b| {
        b.iter(|| decic::bridge::check_condition_c_seq(&cert, &p, &d).unwrap())
    });
    group.finish();
}

fn bench_simulation(c: &mut Criterion) {
    let (p, d, code) = bench_instance();

    let mut group = c.benchmark_group("simulate_200_trials");
    group.measurement_time(Duration::from_secs(10));
    group.sample_size(10);
    group.bench_function("parallel", |b| {
        b.iter(|| simulate(&p, &d, &code, 200, 7).unwrap())
    });
    group.bench_function("sequential", |b| {
        b.iter(|| simulate_seq(&p, &d, &code, 200, 7).unwrap())
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_verifiers,
    bench_condition_c,
    bench_simulation
);
criterion_main!(benches);
