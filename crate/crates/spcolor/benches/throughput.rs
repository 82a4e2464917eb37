//! Decider throughput across instance sizes, and the corpus checker's
//! sequential path against the data-parallel one.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};

use spcolor::corpus::{self, CorpusOptions};
use spcolor::oracle;
use spcolor::reducer::{self, Verdict};

fn decide_scaling(c: &mut Criterion) {
    let mut group = c.benchmark_group("decide");
    group.sample_size(10);
    for n in [10_000usize, 40_000, 160_000] {
        let g = oracle::gen_sp(0xb13c4, n, 3);
        let delta = g.max_degree();
        // A palette at the worst-case chromatic index forces a full
        // reduction on every iteration.
        let k = delta + delta.div_ceil(2);
        group.throughput(Throughput::Elements(g.class_count() as u64));
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| {
            b.iter(|| assert!(matches!(reducer::decide(g, k), Verdict::Yes)));
        });
    }
    group.finish();
}

fn corpus_paths(c: &mut Criterion) {
    let options = CorpusOptions {
        instances: 256,
        seed: 3,
        check_shadow: true,
        check_configs: true,
        ..CorpusOptions::default()
    };
    let mut group = c.benchmark_group("corpus");
    group.sample_size(10);
    group.bench_function("sequential", |b| {
        b.iter(|| assert!(corpus::run_checks_sequential(&options).is_clean()));
    });
    #[cfg(feature = "parallel")]
    group.bench_function("parallel", |b| {
        b.iter(|| assert!(corpus::run_checks_parallel(&options).is_clean()));
    });
    group.finish();
}

criterion_group!(benches, decide_scaling, corpus_paths);
criterion_main!(benches);
