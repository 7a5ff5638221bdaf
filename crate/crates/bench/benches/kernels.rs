use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use repwild::mackey::coh_mackey_cyclic;
use repwild::relhom::{hom_table, KleinContext};
use repwild::repcat::{decompose, hom_basis};
use repwild::strings::{special_biserial_indecomposables, SbBounds};
use repwild::wildfam::{gamma_modules_exhaustive, verify_strict_family};
use repwild::{Family, PrimeField, StrictFamilySpec};
use repwild_bench::{c2_sum, dense_matrix};

fn rref(c: &mut Criterion) {
    let mut g = c.benchmark_group("rref");
    for n in [32, 64, 128] {
        let m = dense_matrix(3, n);
        g.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| b.iter(|| black_box(m.rank())));
    }
    g.finish();
}

fn decomposition(c: &mut Criterion) {
    let mut g = c.benchmark_group("decompose");
    for copies in [2, 4, 8] {
        let m = c2_sum(copies);
        g.bench_with_input(BenchmarkId::new("c2-sum", copies), &m, |b, m| b.iter(|| decompose(m).unwrap()));
        g.bench_with_input(BenchmarkId::new("end", copies), &m, |b, m| b.iter(|| hom_basis(m, m).unwrap()));
    }
    g.finish();
}

fn classification(c: &mut Criterion) {
    let alg = coh_mackey_cyclic(5, 1).unwrap().algebra;
    c.bench_function("classify coh-mackey 5", |b| {
        b.iter(|| special_biserial_indecomposables(&alg, SbBounds::default()).unwrap())
    });
    let ctx = KleinContext::new().unwrap();
    c.bench_function("klein hom table n<=3", |b| b.iter(|| hom_table(&ctx, 3).unwrap()));
}

fn strict_family(c: &mut Criterion) {
    let f = PrimeField::new(2).unwrap();
    let spec = StrictFamilySpec::new(Family::MackeyC2, f).unwrap();
    let set = gamma_modules_exhaustive(f, [1, 1, 1]);
    let mut g = c.benchmark_group("strict family");
    g.sample_size(10);
    g.bench_function("mackey-c2 exhaustive", |b| b.iter(|| verify_strict_family(&spec, &set, None).unwrap()));
    g.finish();
}

criterion_group!(benches, rref, decomposition, classification, strict_family);
criterion_main!(benches);
