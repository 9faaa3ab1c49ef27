use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use commsurf::numeric::primes_between;
use commsurf::par::Execution;
use commsurf::surface_arith::{count_surface_s, lefschetz_b};

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn surface_count(c: &mut Criterion) {
    let mut g = c.benchmark_group("count_surface_s");
    g.sample_size(10);
    for (p, r) in [(199u64, 1usize), (31, 2)] {
        for (name, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(name, format!("{p}^{r}")), &(p, r), |b, &(p, r)| {
                b.iter(|| count_surface_s(black_box(p), r, exec).unwrap())
            });
        }
    }
    g.finish();
}

fn sweep(c: &mut Criterion) {
    let mut g = c.benchmark_group("lefschetz_sweep_p_lt_100");
    g.sample_size(10);
    let primes = primes_between(5, 100);
    for (name, exec) in MODES {
        g.bench_function(name, |b| {
            b.iter(|| {
                primes
                    .iter()
                    .map(|&p| lefschetz_b(p, 1, exec).unwrap().b_q)
                    .sum::<i64>()
            })
        });
    }
    g.finish();
}

criterion_group!(benches, surface_count, sweep);
criterion_main!(benches);
