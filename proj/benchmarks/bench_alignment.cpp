// Copyright 2026 the asr-ward authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "asrward/alignment.hpp"
#include "asrward/rng.hpp"
#include "asrward/textnorm.hpp"

namespace {

using asrward::Rng;
using asrward::align::AlignParams;
using asrward::align::smith_waterman;
using asrward::textnorm::Token;

// Hypothesis-like stream: mostly the reference words with occasional
// substitutions, so traces look like real alignments.
std::pair<std::vector<Token>, std::vector<Token>> make_streams(std::size_t n) {
  static const std::vector<std::string> kWords = {
      "take", "the", "heart", "now", "well", "check", "blood", "rest",
      "water", "again", "feel", "good", "home", "today", "daily"};
  Rng rng(n * 7919 + 1);
  std::vector<Token> ref, hyp;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string& w = kWords[rng.below(kWords.size())];
    ref.push_back(Token{w, w, i});
    if (rng.below(10) == 0) {
      const std::string& sub = kWords[rng.below(kWords.size())];
      hyp.push_back(Token{sub, sub, i});
    } else {
      hyp.push_back(Token{w, w, i});
    }
  }
  return {std::move(ref), std::move(hyp)};
}

void BM_SmithWaterman(benchmark::State& state) {
  auto [ref, hyp] = make_streams(static_cast<std::size_t>(state.range(0)));
  const AlignParams params{};
  for (auto _ : state) {
    auto result = smith_waterman(ref, hyp, params);
    benchmark::DoNotOptimize(result.score);
  }
  state.SetComplexityN(state.range(0));
}

}  // namespace

BENCHMARK(BM_SmithWaterman)->Range(64, 2048)->Complexity(benchmark::oNSquared);

BENCHMARK_MAIN();
