use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use fpp_core::abelian::sample::{little_lemma_run, trace_oracle_run};
use fpp_core::abelian::{little_lemma_check, FinAbGroup, GroupEndo};
use fpp_core::Strategy;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn strategies() -> Vec<(&'static str, Strategy)> {
    let mut out = vec![("sequential", Strategy::Sequential)];
    #[cfg(feature = "parallel")]
    out.push(("parallel", Strategy::Parallel));
    out
}

fn trace_oracle(c: &mut Criterion) {
    let mut g = c.benchmark_group("trace_oracle_200_cases");
    g.sample_size(10);
    for (name, s) in strategies() {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| trace_oracle_run(&mut ChaCha8Rng::seed_from_u64(1), 200, 200, black_box(s)))
        });
    }
    g.finish();
}

fn little_lemma_groups(c: &mut Criterion) {
    let mut g = c.benchmark_group("little_lemma_order_le_200");
    g.sample_size(10);
    for (name, s) in strategies() {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| little_lemma_run(&mut ChaCha8Rng::seed_from_u64(2), 200, 10, black_box(s)))
        });
    }
    g.finish();
}

/// A single large enumeration: every element of C7 × C7 × C7 under a diagonal order-3 map.
fn single_group_enumeration(c: &mut Criterion) {
    let f = FinAbGroup::new(vec![7, 7, 7]).expect("valid");
    let sigma = GroupEndo::multiplication(&f, 2);
    let mut g = c.benchmark_group("norm_check_c7_cubed");
    for (name, s) in strategies() {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| little_lemma_check(black_box(&f), &sigma, 1000, s))
        });
    }
    g.finish();
}

criterion_group!(benches, trace_oracle, little_lemma_groups, single_group_enumeration);
criterion_main!(benches);
