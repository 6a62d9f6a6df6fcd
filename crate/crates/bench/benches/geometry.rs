use criterion::{criterion_group, criterion_main, Criterion};
use effcert::geometry2d::{feasible_sets, hull, minkowski_sum, Point};
use effcert::rational::int;
use effcert::sample;
use effcert_bench::{game_outcomes, rng};
use std::hint::black_box;

fn hulls(c: &mut Criterion) {
    let mut r = rng(3);
    let pts: Vec<Point> = (0..200)
        .map(|_| {
            Point::new(
                sample::rational(&mut r, 50, 10),
                sample::rational(&mut r, 50, 10),
            )
        })
        .collect();
    c.bench_function("hull_200_points", |b| {
        b.iter(|| hull(black_box(&pts)).unwrap())
    });

    let polys: Vec<_> = pts.chunks(20).map(|ch| hull(ch).unwrap()).collect();
    let weighted: Vec<_> = polys.iter().map(|p| (int(1), p)).collect();
    c.bench_function("minkowski_sum_10_polygons", |b| {
        b.iter(|| minkowski_sum(black_box(&weighted)).unwrap())
    });
}

fn feasible(c: &mut Criterion) {
    let cases = game_outcomes(5, &[3, 3], 4, 1);
    let game = &cases[0].0;
    c.bench_function("feasible_sets_3x3_four_states", |b| {
        b.iter(|| feasible_sets(black_box(game)).unwrap())
    });
}

criterion_group!(benches, hulls, feasible);
criterion_main!(benches);
