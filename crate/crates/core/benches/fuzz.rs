//! Sequential against rayon-parallel execution of the trial loops.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use normcomp::counterexamples::thompson_search;
use normcomp::fuzz::{run_fuzz, FuzzConfig, FuzzMode};
use normcomp::Execution;

const SCHEDULES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn fuzz_modes(c: &mut Criterion) {
    let mut group = c.benchmark_group("fuzz");
    group.sample_size(10);
    for mode in [FuzzMode::Thm1, FuzzMode::M2, FuzzMode::Abs3] {
        let config = FuzzConfig::new(mode, 500, 7);
        for (name, exec) in SCHEDULES {
            group.bench_with_input(
                BenchmarkId::new(mode.to_string(), name),
                &config,
                |b, config| b.iter(|| run_fuzz(black_box(config), exec).unwrap()),
            );
        }
    }
    group.finish();
}

fn seed_search(c: &mut Criterion) {
    let mut group = c.benchmark_group("thompson_search");
    group.sample_size(10);
    // Hits come early, so each iteration evaluates one full search chunk.
    let trials = 20_000;
    for (name, exec) in SCHEDULES {
        group.bench_function(name, |b| {
            b.iter(|| thompson_search(black_box(trials), black_box(3), exec).ok())
        });
    }
    group.finish();
}

criterion_group!(benches, fuzz_modes, seed_search);
criterion_main!(benches);
