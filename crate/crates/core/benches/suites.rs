use criterion::{criterion_group, criterion_main, Criterion};

use pcalab::suites::{run_suite, SuiteConfig};
use pcalab::Exec;

fn config(model: &str, samples: usize, exec: Exec) -> SuiteConfig {
    SuiteConfig {
        samples: Some(samples),
        seed: 1,
        fuel: 100_000,
        exec,
        model: model.to_string(),
    }
}

fn suites(c: &mut Criterion) {
    let mut group = c.benchmark_group("suites");
    group.sample_size(10);
    for (suite, model, samples) in [("k-axiom", "k2", 40), ("axioms", "code", 100), ("rho", "k2", 10)] {
        for (label, exec) in [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)] {
            let cfg = config(model, samples, exec);
            group.bench_function(format!("{suite}/{model}/{label}"), |b| {
                b.iter(|| run_suite(suite, &cfg).expect("known suite"))
            });
        }
    }
    group.finish();
}

criterion_group!(benches, suites);
criterion_main!(benches);
