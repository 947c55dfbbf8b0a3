use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ggs_core::bd::{enumerate_triples, BdTriple, TripleContext};
use ggs_core::chains::{outer_chains_with, DEFAULT_CHAIN_LIMIT};
use ggs_core::exec::Execution;
use ggs_core::s_solver::solve_s;
use ggs_core::tensor::{build_r_ggs, qybe_residual_with};
use ggs_core::verify::{verify_triples, Check, VerifyConfig};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn verify_sweep(c: &mut Criterion) {
    let triples: Vec<BdTriple> = (2..=4).flat_map(|n| enumerate_triples(n).unwrap()).collect();
    let mut group = c.benchmark_group("verify-n4");
    group.sample_size(10);
    for (name, mode) in MODES {
        let mut config = VerifyConfig::new(vec![Check::Qybe, Check::Hecke, Check::Equality, Check::Partition]);
        config.mode = mode;
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| verify_triples(black_box(&triples), &config).unwrap())
        });
    }
    group.finish();
}

fn qybe_residual_n5(c: &mut Criterion) {
    let t = BdTriple::new(5, [(1, 2), (2, 3), (3, 4)]).unwrap();
    let r = build_r_ggs(&TripleContext::new(&t), &solve_s(&t).unwrap().particular).unwrap();
    let mut group = c.benchmark_group("qybe-n5");
    group.sample_size(10);
    for (name, mode) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| qybe_residual_with(black_box(&r), mode).unwrap())
        });
    }
    group.finish();
}

fn chain_enumeration(c: &mut Criterion) {
    let ctx = TripleContext::new(&BdTriple::new(6, [(1, 2), (2, 3), (3, 4), (4, 5)]).unwrap());
    let mut group = c.benchmark_group("outer-chains-n6");
    for (name, mode) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| outer_chains_with(black_box(&ctx), DEFAULT_CHAIN_LIMIT, mode).unwrap())
        });
    }
    group.finish();
}

criterion_group!(sweeps, verify_sweep, qybe_residual_n5, chain_enumeration);
criterion_main!(sweeps);
