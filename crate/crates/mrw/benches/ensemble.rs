//! Parallel vs sequential throughput of the Monte Carlo hot paths.
//!
//! Run with the default features to get both sides of the comparison:
//!
//! ```text
//! cargo bench -p mrw
//! ```

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use mrw::mctest::{delta_h_null_samples, delta_h_null_samples_seq, dynamical_trace};
use mrw::scaling::GheConfig;
use mrw::synth::{simulate_mrw, MrwParams};

fn bench_null_ensemble(c: &mut Criterion) {
    let params = MrwParams::log_normal(0.2, 1250.0, 1.0).unwrap();
    let ghe_cfg = GheConfig::weighted(415.0);
    let mut group = c.benchmark_group("delta_h_null_ensemble");
    group.sample_size(10);
    for &n_sims in &[32usize, 128] {
        group.bench_with_input(BenchmarkId::new("parallel", n_sims), &n_sims, |b, &n| {
            b.iter(|| {
                delta_h_null_samples(black_box(&params), n, 1250, 7, 1.0, 2.0, &ghe_cfg).unwrap()
            })
        });
        group.bench_with_input(BenchmarkId::new("sequential", n_sims), &n_sims, |b, &n| {
            b.iter(|| {
                delta_h_null_samples_seq(black_box(&params), n, 1250, 7, 1.0, 2.0, &ghe_cfg)
                    .unwrap()
            })
        });
    }
    group.finish();
}

fn bench_rolling_trace(c: &mut Criterion) {
    let params = MrwParams::log_normal(0.2, 1250.0, 1.0).unwrap();
    let returns = simulate_mrw(&params, 4000, 11).unwrap().into_returns();
    let ghe_cfg = GheConfig::weighted(415.0);
    let mut group = c.benchmark_group("dynamical_trace");
    group.sample_size(10);
    group.bench_function("window_1250_shift_100", |b| {
        b.iter(|| dynamical_trace(black_box(&returns), 1250, 100, 1.0, 2.0, &ghe_cfg).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_null_ensemble, bench_rolling_trace);
criterion_main!(benches);
