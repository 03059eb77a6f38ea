//! Parallel versus sequential timing for the three heavy sweep kinds.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use autoqc_core::fermion_walk::{default_time_grid, FermionWalk};
use autoqc_core::parallel::map_slice;
use autoqc_core::Exec;

fn time_sweep(c: &mut Criterion) {
    let walk = FermionWalk::new(64).unwrap();
    let grid = default_time_grid(64);
    let mut group = c.benchmark_group("time_sweep_m64");
    for exec in [Exec::Parallel, Exec::Sequential] {
        group.bench_with_input(BenchmarkId::from_parameter(format!("{exec:?}")), &exec, |b, &e| {
            b.iter(|| black_box(walk.sweep(&grid, e)));
        });
    }
    group.finish();
}

fn class_pair_sums(c: &mut Criterion) {
    let walk = FermionWalk::new(64).unwrap();
    let mut group = c.benchmark_group("time_average_m64");
    group.sample_size(10);
    for exec in [Exec::Parallel, Exec::Sequential] {
        group.bench_with_input(BenchmarkId::from_parameter(format!("{exec:?}")), &exec, |b, &e| {
            b.iter(|| black_box(walk.time_averages(e)));
        });
    }
    group.finish();
}

fn parameter_sweep(c: &mut Criterion) {
    let sizes: Vec<usize> = vec![8, 12, 16, 24, 32, 48];
    let mut group = c.benchmark_group("passing_time_size_sweep");
    group.sample_size(10);
    for exec in [Exec::Parallel, Exec::Sequential] {
        group.bench_with_input(BenchmarkId::from_parameter(format!("{exec:?}")), &exec, |b, &e| {
            b.iter(|| {
                let stars = map_slice(e, &sizes, |&m| {
                    let walk = FermionWalk::new(m).unwrap();
                    walk.passing_time(m / 4).unwrap().t_star
                });
                black_box(stars)
            });
        });
    }
    group.finish();
}

criterion_group!(benches, time_sweep, class_pair_sums, parameter_sweep);
criterion_main!(benches);
