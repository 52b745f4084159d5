use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use mpcc::experiments::{generate_instance, run_experiment_with, Algorithm, ExperimentConfig};
use mpcc::{solve_exact_with, solve_mlr, ExactBudget, Execution};

fn modes() -> [(&'static str, Execution); 2] {
    [
        ("sequential", Execution::Sequential),
        ("parallel", Execution::Parallel),
    ]
}

fn trials(c: &mut Criterion) {
    let mut group = c.benchmark_group("trials");
    group.sample_size(10);
    for &(n, m) in &[(100, 4), (300, 12)] {
        let mut cfg = ExperimentConfig::new(n, m, 40);
        cfg.trials = 16;
        for (name, exec) in modes() {
            group.bench_with_input(BenchmarkId::new(name, n), &cfg, |b, cfg| {
                b.iter(|| run_experiment_with(black_box(cfg), exec).unwrap())
            });
        }
    }
    group.finish();
}

fn exact_root_split(c: &mut Criterion) {
    let mut cfg = ExperimentConfig::new(11, 4, 3);
    cfg.algorithms = vec![Algorithm::Exact];
    let inst = generate_instance(&cfg, 0);
    let mut group = c.benchmark_group("exact");
    group.sample_size(10);
    for (name, exec) in modes() {
        group.bench_function(name, |b| {
            b.iter(|| solve_exact_with(black_box(&inst), ExactBudget::unlimited(), exec).unwrap())
        });
    }
    group.finish();
}

fn single_mlr(c: &mut Criterion) {
    let inst = generate_instance(&ExperimentConfig::new(500, 20, 40), 0);
    c.bench_function("mlr/n500_m20", |b| {
        b.iter(|| solve_mlr(black_box(&inst)).unwrap())
    });
}

criterion_group!(benches, trials, exact_root_split, single_mlr);
criterion_main!(benches);
