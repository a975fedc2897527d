use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use qtrin_core::suite::{run_suite_with, Execution, SuiteName, SuiteOptions};

fn sweeps(c: &mut Criterion) {
    let mut group = c.benchmark_group("sweeps");
    group.sample_size(10);
    let cases = [
        (SuiteName::Connect, SuiteOptions { lmax: Some(10), ..Default::default() }),
        (SuiteName::Appendix, SuiteOptions { lmax: Some(6), ..Default::default() }),
        (SuiteName::Virasoro, SuiteOptions { lmax: Some(10), ..Default::default() }),
    ];
    for (name, opts) in &cases {
        for (label, exec) in [("parallel", Execution::Parallel), ("sequential", Execution::Sequential)] {
            group.bench_with_input(BenchmarkId::new(label, name), opts, |b, o| {
                b.iter(|| {
                    let r = run_suite_with(*name, o, exec).unwrap();
                    assert!(r.all_pass());
                    r
                })
            });
        }
    }
    group.finish();
}

criterion_group!(benches, sweeps);
criterion_main!(benches);
