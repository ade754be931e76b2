// Copyright 2026 the asr-ward authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "asrward/metrics.hpp"
#include "asrward/rng.hpp"
#include "asrward/textnorm.hpp"

namespace {

using asrward::Rng;
using asrward::textnorm::Token;

std::vector<Token> random_tokens(std::size_t n, std::uint64_t seed) {
  static const std::vector<std::string> kWords = {
      "a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "k", "l"};
  Rng rng(seed);
  std::vector<Token> out;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string& w = kWords[rng.below(kWords.size())];
    out.push_back(Token{w, w, i});
  }
  return out;
}

void BM_Wer(benchmark::State& state) {
  auto ref = random_tokens(static_cast<std::size_t>(state.range(0)), 1);
  auto hyp = random_tokens(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state)
    benchmark::DoNotOptimize(asrward::metrics::wer(ref, hyp));
}

void BM_Bleu(benchmark::State& state) {
  auto ref = random_tokens(static_cast<std::size_t>(state.range(0)), 3);
  auto hyp = random_tokens(static_cast<std::size_t>(state.range(0)), 4);
  for (auto _ : state)
    benchmark::DoNotOptimize(asrward::metrics::bleu(ref, hyp));
}

}  // namespace

BENCHMARK(BM_Wer)->Range(16, 1024);
BENCHMARK(BM_Bleu)->Range(16, 1024);

BENCHMARK_MAIN();
