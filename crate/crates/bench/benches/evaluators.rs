use criterion::{black_box, criterion_group, criterion_main, Criterion};

use corrmax_bench::{medium_graph, tiny_graph};
use corrmax_core::adversary::exact_expected_influence;
use corrmax_core::graph::{ProbabilityModel, SeedSet};
use corrmax_core::ic::{f_ic_estimate, f_ic_exact, SampleBank};
use corrmax_core::maximize::{lazy_greedy, CorrEvaluator};
use corrmax_core::robust::{influence_profile, marginal_gain_corr};

fn bench_influence_profile(c: &mut Criterion) {
    let g = medium_graph(ProbabilityModel::Identical(0.01));
    let s = SeedSet::new(vec![0, 17, 400], g.node_count()).unwrap();
    c.bench_function("influence_profile 2k nodes p=0.01", |b| {
        b.iter(|| influence_profile(black_box(&g), black_box(&s)))
    });

    let dense = medium_graph(ProbabilityModel::Uniform01);
    c.bench_function("influence_profile 2k nodes unif01", |b| {
        b.iter(|| influence_profile(black_box(&dense), black_box(&s)))
    });
}

fn bench_marginal_gain(c: &mut Criterion) {
    let g = medium_graph(ProbabilityModel::Uniform01);
    let s = SeedSet::new(vec![0], g.node_count()).unwrap();
    let prof = influence_profile(&g, &s);
    c.bench_function("marginal_gain_corr", |b| {
        b.iter(|| marginal_gain_corr(black_box(&g), black_box(&prof), black_box(99)).unwrap())
    });
}

fn bench_lazy_greedy(c: &mut Criterion) {
    let g = medium_graph(ProbabilityModel::Identical(0.05));
    let mut group = c.benchmark_group("lazy_greedy");
    group.sample_size(10);
    group.bench_function("corr k=10 on 2k nodes", |b| {
        b.iter(|| {
            let e = CorrEvaluator::new(&g);
            lazy_greedy(&e, &g, 10).unwrap()
        })
    });
    group.finish();
}

fn bench_ic(c: &mut Criterion) {
    let g = medium_graph(ProbabilityModel::Identical(0.01));
    let s = SeedSet::new(vec![0, 17, 400], g.node_count()).unwrap();
    let mut group = c.benchmark_group("ic");
    group.sample_size(10);
    group.bench_function("f_ic_estimate R=1000", |b| {
        b.iter(|| f_ic_estimate(black_box(&g), black_box(&s), 1000, 5).unwrap())
    });
    group.bench_function("sample_bank build+2 commits R=1000", |b| {
        b.iter(|| {
            let mut bank = SampleBank::build(&g, 1000, 5).unwrap();
            bank.commit(&g, 0);
            bank.commit(&g, 17);
            bank.value()
        })
    });
    group.finish();

    let tiny = tiny_graph();
    let ts = SeedSet::new(vec![0], tiny.node_count()).unwrap();
    c.bench_function("f_ic_exact 18 edges", |b| {
        b.iter(|| f_ic_exact(black_box(&tiny), black_box(&ts)).unwrap())
    });
}

fn bench_coupling(c: &mut Criterion) {
    let g = medium_graph(ProbabilityModel::Uniform01);
    let s = SeedSet::new(vec![0, 17, 400], g.node_count()).unwrap();
    let prof = influence_profile(&g, &s);
    c.bench_function("exact_expected_influence 2k nodes", |b| {
        b.iter(|| exact_expected_influence(black_box(&g), black_box(&prof)))
    });
}

criterion_group!(
    benches,
    bench_influence_profile,
    bench_marginal_gain,
    bench_lazy_greedy,
    bench_ic,
    bench_coupling
);
criterion_main!(benches);
