// Copyright 2026 the asr-ward authors
// SPDX-License-Identifier: Apache-2.0
//
// Labeled entailment examples: labeling aligned pairs, duration filtering,
// class balancing, conversation-grouped splitting, and JSONL manifests.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "asrward/alignment.hpp"
#include "asrward/ontology.hpp"

namespace asrward::dataset {

struct AudioRef {
  std::string path;  // may be empty when no audio accompanies the transcript
  double start_s = 0.0;
  double end_s = 0.0;

  bool operator==(const AudioRef&) const = default;
};

// One (audio span, hypothesis text) pair with its error labels. label = 1
// means an ASR error is present (negative entailment). ref_text is kept for
// analysis and term breakdowns but is never model input.
struct EntailmentExample {
  std::string id;  // "<conversation>:<ordinal>"
  AudioRef audio_ref;
  std::string hyp_text;
  int label = 0;
  std::optional<int> medical_label;
  std::string ref_text;
  std::vector<ontology::TermHit> term_hits;  // found on ref_text

  double duration_s() const { return audio_ref.end_s - audio_ref.start_s; }
  // Grouping key for splits: id prefix before the first ':' (whole id when
  // there is none).
  std::string conversation() const;

  bool operator==(const EntailmentExample&) const = default;
};

enum class LabelField { All, Medical };

// Label under the given field; throws EmptyInput if medical_label is
// requested but absent.
int example_label(const EntailmentExample& e, LabelField field);

struct DatasetManifest {
  std::string split;  // train / val / test / test_simulated
  std::vector<EntailmentExample> examples;
  std::uint64_t seed = 0;
  std::string lexicon_hash;
};

// label = 1 iff the trace contains any non-Match op. medical_label = 1 iff
// some reference term hit has no contiguous normalized occurrence in the
// hypothesis segment.
std::pair<int, int> label_pair(const align::AlignedPair& pair,
                               const ontology::Lexicon& lex);

// Keeps examples with duration in [min_s, max_s], inclusive at both ends.
std::vector<EntailmentExample> filter_duration(
    std::vector<EntailmentExample> examples, double min_s, double max_s);

// Downsamples the majority class uniformly at random (seeded) to the
// minority count, then reshuffles. Throws EmptyClass if either class is
// empty.
std::vector<EntailmentExample> balance(std::vector<EntailmentExample> examples,
                                       LabelField field, std::uint64_t seed);

struct Splits {
  std::vector<EntailmentExample> train;
  std::vector<EntailmentExample> val;
  std::vector<EntailmentExample> test;
};

// Seeded 80/10/10 split by example count (remainder assigned train -> val ->
// test), with all examples of one conversation kept in one split. Throws
// TooFewExamples below 10 examples.
Splits split_dataset(std::vector<EntailmentExample> examples,
                     std::uint64_t seed);

// JSON-lines manifest: one header line {"split","seed","lexicon_hash"}, then
// one example per line. write/read round-trip is identity; unknown fields
// are ignored with a warning pushed to `warnings` when given.
void write_manifest(const DatasetManifest& manifest,
                    const std::filesystem::path& path);
DatasetManifest read_manifest(const std::filesystem::path& path,
                              std::vector<std::string>* warnings = nullptr);

}  // namespace asrward::dataset
