// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use wstream_bench::{random_order_complete, random_order_gnp};
use wstream_core::{
    color_vizing, run_stream, AdjacencyGraph, BipartiteColourer, BipartiteConfig, ChunkConfig,
    ChunkedColourer,
};

fn vizing(c: &mut Criterion) {
    let mut group = c.benchmark_group("vizing");
    for n in [64usize, 128, 256] {
        let stream = random_order_complete(n, 1);
        let g = AdjacencyGraph::from_edges(&stream.edges).unwrap();
        group.throughput(Throughput::Elements(stream.len() as u64));
        group.bench_with_input(BenchmarkId::new("complete", n), &g, |b, g| {
            b.iter(|| color_vizing(g))
        });
    }
    group.finish();
}

fn chunked(c: &mut Criterion) {
    let stream = random_order_complete(128, 2);
    let mut group = c.benchmark_group("chunked");
    group.throughput(Throughput::Elements(stream.len() as u64));
    for alpha in [2u32, 4, 8] {
        group.bench_with_input(BenchmarkId::new("k128", alpha), &alpha, |b, &alpha| {
            b.iter(|| {
                let mut col = ChunkedColourer::new(ChunkConfig::new(stream.n(), alpha).unwrap());
                run_stream(&mut col, &stream).unwrap()
            })
        });
    }
    group.finish();
}

fn bipartite(c: &mut Criterion) {
    let stream = random_order_gnp(2048, 0.05, 3);
    let mut group = c.benchmark_group("bipartite");
    group.sample_size(20);
    group.throughput(Throughput::Elements(stream.len() as u64));
    for s in [4u32, 16, 275] {
        group.bench_with_input(BenchmarkId::new("gnp2048", s), &s, |b, &s| {
            b.iter(|| {
                let mut col =
                    BipartiteColourer::new(BipartiteConfig::new(stream.n(), s, 7)).unwrap();
                run_stream(&mut col, &stream).unwrap()
            })
        });
    }
    group.finish();
}

criterion_group!(benches, vizing, chunked, bipartite);
criterion_main!(benches);
