use criterion::{black_box, criterion_group, criterion_main, Criterion};
use twistgen_bench::generator_keys;
use twistgen_core::report::{run_verification, GenSet, VerifyOptions};
use twistgen_core::search::{closure_with_threads, Rep, DEFAULT_CAP};
use twistgen_core::{Evaluator, Model};

fn closures(c: &mut Criterion) {
    let mut group = c.benchmark_group("closure_z2");
    for (g, samples) in [(5, 50), (7, 10)] {
        for set in [GenSet::Torsion, GenSet::Omori] {
            let (packing, keys) = generator_keys(g, set, Rep::Z2);
            group.sample_size(samples);
            group.bench_function(format!("g{g}_{set:?}").to_lowercase(), |b| {
                b.iter(|| closure_with_threads(packing, black_box(&keys), DEFAULT_CAP, 1).unwrap().order())
            });
        }
    }
    group.finish();
}

fn words(c: &mut Criterion) {
    let model = Model::new(7).unwrap();
    let word = "SGM TAU1 B0 A3' TAU2 C E U2 Y5 A1 A1 SGM'".repeat(4);
    c.bench_function("evaluate_word_g7", |b| {
        let mut ev = Evaluator::new(&model);
        b.iter(|| ev.evaluate_str(black_box(&word)).unwrap())
    });
    c.bench_function("twist_from_curve_g7", |b| {
        b.iter(|| model.standard_curve(black_box("b0")).unwrap())
    });
}

fn verify(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    group.bench_function("g5", |b| b.iter(|| run_verification(5, &VerifyOptions { threads: 1, ..Default::default() }).unwrap()));
    group.finish();
}

criterion_group!(benches, closures, words, verify);
criterion_main!(benches);
