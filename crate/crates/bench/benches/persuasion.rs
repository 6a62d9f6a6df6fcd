use criterion::{criterion_group, criterion_main, Criterion};
use effcert::examples::running_sr;
use effcert::persuasion::{build_threshold_env, solve_bp};
use effcert::rational::{frac, int};
use effcert::sweep::{sweep_threshold, sweep_two_state};
use effcert_bench::sender_receiver;
use std::hint::black_box;

fn bp(c: &mut Criterion) {
    let g = sender_receiver(9, 3, 4);
    let prior = vec![frac(1, 3), frac(1, 3), frac(1, 3)];
    c.bench_function("solve_bp_three_states_four_actions", |b| {
        b.iter(|| solve_bp(black_box(&g), black_box(&prior)).unwrap())
    });
}

fn sweeps(c: &mut Criterion) {
    let mut group = c.benchmark_group("sweep");
    group.sample_size(10);
    let g = running_sr(frac(1, 2));
    group.bench_function("running_example_101", |b| {
        b.iter(|| sweep_two_state(black_box(&g), 101).unwrap())
    });
    let env = build_threshold_env(2, frac(7, 10), vec![int(1), int(2)]).unwrap();
    group.bench_function("threshold_grid_10", |b| {
        b.iter(|| sweep_threshold(black_box(&env), 10).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bp, sweeps);
criterion_main!(benches);
