use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use carlitz_core::algebra::Field;
use carlitz_core::exec::ExecMode;
use carlitz_core::verify::{run_suite, Suite, SuiteParams};

fn suites(c: &mut Criterion) {
    let field = Field::new(2, 1).unwrap();
    let mut group = c.benchmark_group("suite");
    group.sample_size(10);
    for suite in [Suite::Basis, Suite::Orthonormal, Suite::Oscillator, Suite::Coherent] {
        for (label, exec) in [("sequential", ExecMode::Sequential), ("parallel", ExecMode::Auto)] {
            let params = SuiteParams { imax: 6, exec, ..SuiteParams::new(&field) };
            group.bench_with_input(BenchmarkId::new(suite.name(), label), &params, |b, p| {
                b.iter(|| run_suite(suite, p))
            });
        }
    }
    group.finish();
}

criterion_group!(benches, suites);
criterion_main!(benches);
