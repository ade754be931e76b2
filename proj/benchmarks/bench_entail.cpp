// Copyright 2026 the asr-ward authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <vector>

#include "asrward/entail.hpp"
#include "asrward/rng.hpp"

namespace {

using namespace asrward::entail;

std::vector<PooledExample> make_batch(std::size_t n, const HeadDims& dims) {
  asrward::Rng rng(n);
  std::vector<PooledExample> batch(n);
  for (std::size_t i = 0; i < n; ++i) {
    batch[i].label = static_cast<int>(i % 2);
    batch[i].acoustic.resize(dims.d_a);
    batch[i].linguistic.resize(dims.d_l);
    for (double& v : batch[i].acoustic) v = rng.uniform_symmetric(1.0);
    for (double& v : batch[i].linguistic) v = rng.uniform_symmetric(1.0);
  }
  return batch;
}

void BM_Forward(benchmark::State& state) {
  HeadDims dims{768, 768, 64};
  auto params = init_params(dims, 1);
  auto batch = make_batch(1, dims);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        forward_pooled(batch[0].acoustic, batch[0].linguistic, params));
}

void BM_Gradients(benchmark::State& state) {
  HeadDims dims{768, 768, 64};
  auto params = init_params(dims, 1);
  auto batch = make_batch(static_cast<std::size_t>(state.range(0)), dims);
  for (auto _ : state) {
    auto g = gradients(batch, params);
    benchmark::DoNotOptimize(g.b_e);
  }
}

}  // namespace

BENCHMARK(BM_Forward);
BENCHMARK(BM_Gradients)->Range(1, 64);

BENCHMARK_MAIN();
