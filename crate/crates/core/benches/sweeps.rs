use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use cyclotome::charsum::{s_distribution_with, Engine};
use cyclotome::codes::{build_code, weight_dist_bruteforce};
use cyclotome::{Exec, FieldCtx, FieldParams};

const STRATEGIES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

fn bench_bruteforce(c: &mut Criterion) {
    let code = build_code(FieldCtx::new(&FieldParams::new(3, 3, 1)).unwrap()).unwrap();
    let mut group = c.benchmark_group("bruteforce (3,3,1)");
    for (name, exec) in STRATEGIES {
        group.bench_function(name, |b| {
            b.iter(|| weight_dist_bruteforce(black_box(&code), exec).unwrap())
        });
    }
    group.finish();
}

fn bench_value_distribution(c: &mut Criterion) {
    let mut group = c.benchmark_group("S/T value distribution");
    group.sample_size(10);
    for (p, m, k) in [(3, 5, 2), (5, 3, 1)] {
        let ctx = FieldCtx::new(&FieldParams::new(p, m, k)).unwrap();
        for (name, exec) in STRATEGIES {
            group.bench_with_input(
                BenchmarkId::new(name, format!("({p},{m},{k})")),
                &ctx,
                |b, ctx| b.iter(|| s_distribution_with(ctx, Engine::Fast, exec).unwrap()),
            );
        }
    }
    group.finish();
}

criterion_group!(benches, bench_bruteforce, bench_value_distribution);
criterion_main!(benches);
