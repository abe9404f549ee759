//! Benchmarks for the workbench hot paths: proof checking, the
//! propositional decision procedure, model enumeration, and countermodel
//! search.

use criterion::{criterion_group, criterion_main, Criterion};
use elw_core::ipc::ipc_valid;
use elw_core::kernel::{check_proof, sp_script, theorem_library, CheckOptions, LogicId};
use elw_core::model::{enumerate_models, find_countermodel, SearchBudget};
use elw_core::parse;
use std::hint::black_box;

fn p(s: &str) -> elw_core::Formula {
    parse(s).unwrap()
}

fn bench_check_library(c: &mut Criterion) {
    let lib = theorem_library();
    let opts = CheckOptions::default();
    c.bench_function("check_proof/whole_library", |b| {
        b.iter(|| {
            for entry in &lib {
                black_box(check_proof(entry.logic, &entry.script, &opts));
            }
        })
    });
}

fn bench_check_sp(c: &mut Criterion) {
    let script = sp_script(
        &p("box (x0 & x1)"),
        &p("box x0 & box x1"),
        &p("K (x2 -> x3) | ~x2"),
        2,
    );
    let opts = CheckOptions::default();
    c.bench_function("check_proof/substitution_script", |b| {
        b.iter(|| black_box(check_proof(LogicId::El3Minus, &script, &opts)))
    });
}

fn bench_ipc(c: &mut Criterion) {
    let valid = p("((x0 -> x1) & (x1 -> x2)) -> (x0 -> x2)");
    let invalid = p("((x0 -> x1) -> x0) -> x0");
    c.bench_function("ipc_valid/theorem", |b| {
        b.iter(|| black_box(ipc_valid(&valid)))
    });
    c.bench_function("ipc_valid/refuted", |b| {
        b.iter(|| black_box(ipc_valid(&invalid)))
    });
}

fn bench_enumerate(c: &mut Criterion) {
    let budget = SearchBudget::default();
    c.bench_function("enumerate_models/EL4", |b| {
        b.iter(|| black_box(enumerate_models(LogicId::El4, &budget)))
    });
}

fn bench_countermodel(c: &mut Criterion) {
    let budget = SearchBudget::default();
    let f = p("K (x0 | x1) -> (K x0 | K x1)");
    c.bench_function("find_countermodel/knowledge_distribution", |b| {
        b.iter(|| black_box(find_countermodel(&f, LogicId::El5, &budget)))
    });
}

criterion_group!(
    benches,
    bench_check_library,
    bench_check_sp,
    bench_ipc,
    bench_enumerate,
    bench_countermodel
);
criterion_main!(benches);
