use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use quatheta::brandt::BrandtData;
use quatheta::order::build_classes;
use quatheta::qform::class_number_of;
use quatheta::theta32::TernaryCounts;
use quatheta_bench::{classes, config, LEVELS};

fn class_enumeration(c: &mut Criterion) {
    let mut g = c.benchmark_group("classes");
    g.sample_size(10);
    for (name, ram, m) in LEVELS {
        let cfg = config(ram, m);
        g.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| build_classes(&cfg).unwrap()));
    }
    g.finish();
}

fn ternary_theta(c: &mut Criterion) {
    let mut g = c.benchmark_group("ternary_theta_2000");
    g.sample_size(10);
    for (name, ram, m) in LEVELS {
        let set = classes(ram, m);
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| TernaryCounts::new(&set, 2000).unwrap().cohen_h())
        });
    }
    g.finish();
}

fn brandt(c: &mut Criterion) {
    let mut g = c.benchmark_group("brandt_100");
    g.sample_size(10);
    for (name, ram, m) in LEVELS {
        let set = classes(ram, m);
        g.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| BrandtData::new(&set, 100).unwrap()));
    }
    g.finish();
}

fn class_numbers(c: &mut Criterion) {
    c.bench_function("class_numbers_2000", |b| {
        b.iter(|| (3..=2000i64).filter_map(|n| class_number_of(-n).ok()).sum::<u64>())
    });
}

criterion_group!(benches, class_enumeration, ternary_theta, brandt, class_numbers);
criterion_main!(benches);
