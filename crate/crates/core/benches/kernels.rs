// SPDX-License-Identifier: Apache-2.0

//! Sequential and parallel paths of the hot loops, side by side.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use gk_semifield::autotopism::{admissible_indices, enumerate_family, enumerate_group, verify_pair, VerifyPolicy};
use gk_semifield::linmap::Form;
use gk_semifield::nuclei::{solve_nucleus, Side};
use gk_semifield::par::{self, Exec};
use gk_semifield::semifield::{check_s3, GkParams, S3Policy, SpreadSet};

const PATHS: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn s3_sampled(c: &mut Criterion) {
    let params = GkParams::fixture("gk-5-6-2").unwrap();
    let set = SpreadSet::build(&params).unwrap();
    let mut group = c.benchmark_group("s3_sampled_20k");
    for (name, exec) in PATHS {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| check_s3(&set, S3Policy::Sampled { samples: 20_000, seed: 1 }, exec))
        });
    }
    group.finish();
}

fn verify_batch(c: &mut Criterion) {
    let params = GkParams::fixture("gk-3-6-2").unwrap();
    let set = SpreadSet::build(&params).unwrap();
    let inv = enumerate_group(&params, VerifyPolicy::Sampled { per_family: 1, seed: 0 }, Exec::default()).unwrap();
    let batch: Vec<_> = inv.elements.iter().step_by(11).cloned().collect();
    let mut group = c.benchmark_group("verify_batch");
    group.sample_size(10);
    for (name, exec) in PATHS {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| par::map_slice(exec, &batch, |a| verify_pair(&set, a)))
        });
    }
    group.finish();
}

fn family(c: &mut Criterion) {
    let params = GkParams::fixture("gk-3-6-2").unwrap();
    let adm = admissible_indices(&params, Form::Diagonal).remove(0);
    let mut group = c.benchmark_group("enumerate_family");
    group.sample_size(10);
    for (name, exec) in PATHS {
        group.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| enumerate_family(&params, &adm, exec)));
    }
    group.finish();
}

fn nucleus(c: &mut Criterion) {
    let params = GkParams::fixture("gk-5-6-2").unwrap();
    let set = SpreadSet::build(&params).unwrap();
    let mut group = c.benchmark_group("middle_nucleus");
    group.sample_size(10);
    for (name, exec) in PATHS {
        group.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| solve_nucleus(&set, Side::Middle, exec)));
    }
    group.finish();
}

criterion_group!(kernels, s3_sampled, verify_batch, family, nucleus);
criterion_main!(kernels);
