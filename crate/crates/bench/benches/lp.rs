use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use effcert::lp::solve;
use effcert_bench::packing_lp;
use std::hint::black_box;

fn packing(c: &mut Criterion) {
    let mut group = c.benchmark_group("lp_packing");
    for (vars, rows) in [(4, 4), (8, 8), (16, 12)] {
        let lp = packing_lp(7, vars, rows);
        group.bench_with_input(
            BenchmarkId::from_parameter(format!("{vars}x{rows}")),
            &lp,
            |b, lp| b.iter(|| solve(black_box(lp)).unwrap()),
        );
    }
    group.finish();
}

criterion_group!(benches, packing);
criterion_main!(benches);
