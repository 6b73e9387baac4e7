use bdrd_core::exec::Exec;
use bdrd_core::experiment::{run_experiment, ExperimentConfig, InputSpec};
use bdrd_core::generate::{generate, Family, GeneratorSpec};
use bdrd_core::neighborhoods::{histogram_with, TypeRegistry};
use bdrd_core::rational::ratio;
use bdrd_core::tester::PropertySpec;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn histograms(c: &mut Criterion) {
    let mut group = c.benchmark_group("histogram");
    group.sample_size(10);
    for family in [
        Family::RandomBoundedDegree { n: 20_000, degree: 3 },
        Family::Grid { rows: 100, cols: 100 },
    ] {
        let db = generate(&GeneratorSpec::new(family).with_seed(1)).unwrap();
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, family), &db, |b, db| {
                b.iter(|| {
                    let mut reg = TypeRegistry::new();
                    black_box(histogram_with(db, 2, &mut reg, exec).unwrap())
                })
            });
        }
    }
    group.finish();
}

fn trials(c: &mut Criterion) {
    let mut group = c.benchmark_group("tester-trials");
    group.sample_size(10);
    let inputs = vec![InputSpec::Generated(GeneratorSpec::new(Family::Cycle { n: 100_000 }))];
    for (name, exec) in MODES {
        let mut config =
            ExperimentConfig::new(PropertySpec::builtin("disjoint-triangles").unwrap(), ratio(1, 20), inputs.clone());
        config.trials = 200;
        config.exec = exec;
        group.bench_function(name, |b| b.iter(|| black_box(run_experiment(&config).unwrap())));
    }
    group.finish();
}

criterion_group!(benches, histograms, trials);
criterion_main!(benches);
