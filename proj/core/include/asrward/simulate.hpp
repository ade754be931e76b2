// Copyright 2026 the asr-ward authors
// SPDX-License-Identifier: Apache-2.0
//
// Simulated-error test sets: mistranscribed hypothesis words are replaced
// with different plausible confusions drawn from a phonetic-class plus
// edit-distance candidate model.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "asrward/alignment.hpp"
#include "asrward/dataset.hpp"

namespace asrward::simulate {

// Soundex-style key: first letter plus three consonant-class digits.
std::string phonetic_key(std::string_view word);

// Plain Levenshtein distance over bytes.
std::size_t edit_distance(std::string_view a, std::string_view b);

struct ConfusionModel {
  std::vector<std::string> vocab;  // deduplicated, sorted
  std::size_t max_edit = 2;
  std::uint64_t seed = 0;
  // word -> sorted candidate list (same phonetic key or within max_edit).
  std::unordered_map<std::string, std::vector<std::string>> candidates;
};

// Precomputes candidate sets for every vocab word: {v != w : key(v) ==
// key(w)} union {v != w : edit_distance(v, w) <= max_edit}.
ConfusionModel build_confusion(std::vector<std::string> vocab,
                               std::size_t max_edit, std::uint64_t seed);

struct SimulateStats {
  std::size_t replaced = 0;
  std::size_t skipped = 0;  // substitution sites with no usable candidate
};

// For each label-1 example, re-aligns hypothesis to reference, and replaces
// every substituted hypothesis word with a seeded-uniform draw from its
// candidate set excluding both the current word and the aligned reference
// word. Labels and audio references are untouched; label-0 examples pass
// through unchanged.
std::vector<dataset::EntailmentExample> simulate_errors(
    std::span<const dataset::EntailmentExample> test, const ConfusionModel& cm,
    const align::AlignParams& params, SimulateStats* stats = nullptr);

}  // namespace asrward::simulate
