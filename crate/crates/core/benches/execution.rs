use std::hint::black_box;

use bgg_core::bggsolve::{exp_neg_action_with, solution_basis_with, solution_from_tractor};
use bgg_core::exactmath::int;
use bgg_core::flatverify::{operator_kernel, FlatOperator, TensorKind};
use bgg_core::liemodel::GeometryKind;
use bgg_core::repforge::{RepDescriptor, Representation};
use bgg_core::strata::{classify_points_with, ClassifierScheme, SampleSpec};
use bgg_core::Execution;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn build(g: &str, d: &str) -> Representation {
    let model = g.parse::<GeometryKind>().unwrap().build().unwrap();
    d.parse::<RepDescriptor>().unwrap().build(&model).unwrap()
}

fn exponentials(c: &mut Criterion) {
    let mut group = c.benchmark_group("exp_neg_action");
    for (g, d) in [("projective:4", "cartanS2L2"), ("conformal:3,1", "ext(3,std)"), ("projective:4", "sym(3,dual(std))")] {
        let rep = build(g, d);
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, format!("{g} {d}")), &rep, |b, rep| {
                b.iter(|| exp_neg_action_with(black_box(rep), exec).unwrap())
            });
        }
    }
    group.finish();
}

fn bases(c: &mut Criterion) {
    let mut group = c.benchmark_group("solution_basis");
    let rep = build("conformal:4,0", "ext(3,std)");
    for (name, exec) in MODES {
        group.bench_function(name, |b| b.iter(|| solution_basis_with(black_box(&rep), exec).unwrap()));
    }
    group.finish();
}

fn strata(c: &mut Criterion) {
    let mut group = c.benchmark_group("classify_points");
    let rep = build("conformal:3,0", "std");
    let system = solution_from_tractor(&rep, &[int(1), int(0), int(1), int(0), int(1)]).unwrap();
    let spec: SampleSpec = "21,3".parse().unwrap();
    for (name, exec) in MODES {
        group.bench_function(name, |b| {
            b.iter(|| classify_points_with(black_box(&system), &spec, ClassifierScheme::DensitySign, exec).unwrap())
        });
    }
    group.finish();
}

fn kernels(c: &mut Criterion) {
    let mut group = c.benchmark_group("operator_kernel");
    group.sample_size(10);
    let g: GeometryKind = "conformal:3,1".parse().unwrap();
    let metric = g.signature();
    for (name, exec) in MODES {
        group.bench_function(name, |b| {
            b.iter(|| {
                operator_kernel(FlatOperator::ConformalKillingVector, TensorKind::Vector, 4, metric.as_ref(), 2, exec)
                    .unwrap()
            })
        });
    }
    group.finish();
}

criterion_group!(benches, exponentials, bases, strata, kernels);
criterion_main!(benches);
