// Copyright 2026 The care-dtn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "care/chunk.hpp"
#include "care/evaluation.hpp"
#include "care/phash.hpp"
#include "care/redundancy.hpp"
#include "care/rng.hpp"

namespace care {
namespace {

GrayImage noise_image(std::size_t side, std::uint64_t seed) {
  Rng rng(seed);
  GrayImage img(side, side);
  for (double& p : img.pixels()) p = rng.uniform(0.0, 255.0);
  return img;
}

void BM_PHash(benchmark::State& state) {
  const GrayImage img = noise_image(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(phash_compute(img));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_PHash)->Arg(64)->Arg(256)->Arg(1024);

SimilarityGraph random_graph(std::size_t n, double p, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::string> items;
  for (std::size_t i = 0; i < n; ++i) items.push_back("i" + std::to_string(1000 + i));
  SimilarityGraph g(items);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (rng.bernoulli(p)) g.add_edge(i, j);
    }
  }
  return g;
}

void BM_MaximalCliques(benchmark::State& state) {
  const SimilarityGraph g = random_graph(static_cast<std::size_t>(state.range(0)), 0.3, 2);
  for (auto _ : state) benchmark::DoNotOptimize(maximal_similar_sets(g));
}
BENCHMARK(BM_MaximalCliques)->Arg(25)->Arg(100)->Arg(400);

void BM_ExactCover(benchmark::State& state) {
  const SimilarityGraph g = random_graph(static_cast<std::size_t>(state.range(0)), 0.2, 3);
  const auto sets = maximal_similar_sets(g);
  for (auto _ : state) benchmark::DoNotOptimize(exact_hitting_set(sets, g.size()));
}
BENCHMARK(BM_ExactCover)->Arg(15)->Arg(25);

void BM_GreedyCover(benchmark::State& state) {
  const SimilarityGraph g = random_graph(static_cast<std::size_t>(state.range(0)), 0.2, 4);
  const auto sets = maximal_similar_sets(g);
  for (auto _ : state) benchmark::DoNotOptimize(greedy_hitting_set(sets, g.size()));
}
BENCHMARK(BM_GreedyCover)->Arg(25)->Arg(400);

void BM_ChunkDedup(benchmark::State& state) {
  Rng rng(5);
  std::vector<Blob> blobs(2, Blob(1 << 20));
  for (auto& b : blobs) {
    for (auto& x : b) x = static_cast<std::uint8_t>(rng.uniform_int(0, 255));
  }
  const auto chunk = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(chunk_dedup_ratio(blobs, chunk));
  state.SetBytesProcessed(state.iterations() * 2 * (1 << 20));
}
BENCHMARK(BM_ChunkDedup)->Arg(64)->Arg(4096);

void BM_RocSweep(benchmark::State& state) {
  Rng rng(6);
  PairScoreSet s;
  for (int i = 0; i < state.range(0); ++i) {
    s.push_back({"a" + std::to_string(i), "b" + std::to_string(i), rng.uniform(0.0, 1.0),
                 rng.bernoulli(0.4)});
  }
  for (auto _ : state) benchmark::DoNotOptimize(roc_sweep(s, Direction::kHigherIsSimilar));
}
BENCHMARK(BM_RocSweep)->Arg(10000)->Arg(100000);

}  // namespace
}  // namespace care
