// Copyright 2026 the asr-ward authors
// SPDX-License-Identifier: Apache-2.0
//
// Evaluation metrics: WER, BLEU, medical-term precision/recall/F1,
// classification metrics with CER, and per-group / per-term breakdown
// reports.

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "asrward/dataset.hpp"
#include "asrward/ontology.hpp"
#include "asrward/textnorm.hpp"

namespace asrward::metrics {

// ---------------------------------------------------------------------------
// Transcription metrics

// (S + D + I) / N * 100 via unit-cost Levenshtein over token norms.
// Throws EmptyReference when ref is empty.
double wer(std::span<const textnorm::Token> ref,
           std::span<const textnorm::Token> hyp);

// Corpus WER accumulator: total edit distance over total reference length.
struct WerStats {
  std::uint64_t distance = 0;
  std::uint64_t ref_len = 0;

  void add(std::span<const textnorm::Token> ref,
           std::span<const textnorm::Token> hyp);
  WerStats& operator+=(const WerStats& other);
  double percent() const;  // throws EmptyReference when ref_len == 0
};

// Corpus-style BLEU-4 accumulator: clipped n-gram counts plus lengths, so
// scores can be aggregated over many segments before finalizing.
struct BleuStats {
  std::array<std::uint64_t, 4> matched{};  // clipped matches per order
  std::array<std::uint64_t, 4> total{};    // hypothesis n-gram counts
  std::uint64_t ref_len = 0;
  std::uint64_t hyp_len = 0;

  void add(std::span<const textnorm::Token> ref,
           std::span<const textnorm::Token> hyp);
  BleuStats& operator+=(const BleuStats& other);

  // Uniform weights, brevity penalty, +1 smoothing on orders 2-4.
  // Returns a score in [0, 100].
  double score() const;
};

// Single-pair BLEU-4. Throws EmptyInput if either side is empty.
double bleu(std::span<const textnorm::Token> ref,
            std::span<const textnorm::Token> hyp);

struct PrF {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Occurrence-recovery precision/recall over medical terms: recall counts
// reference hits whose term occurs contiguously in the hypothesis; precision
// counts hypothesis term hits whose term was recovered from the reference.
// Vacuously 1.0 on the empty sides.
PrF medical_prf(const std::vector<ontology::TermHit>& ref_hits,
                std::span<const textnorm::Token> hyp_tokens,
                const ontology::Lexicon& lex);

// Aggregates medical_prf numerators/denominators across segments.
struct MedicalPrfStats {
  std::uint64_t recovered = 0;
  std::uint64_t ref_total = 0;
  std::uint64_t hyp_recovered = 0;
  std::uint64_t hyp_total = 0;

  void add(const std::vector<ontology::TermHit>& ref_hits,
           std::span<const textnorm::Token> hyp_tokens,
           const ontology::Lexicon& lex);
  PrF finalize() const;
};

// ---------------------------------------------------------------------------
// Classification metrics

struct Confusion {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t tn = 0;
  std::uint64_t fn = 0;

  std::uint64_t total() const { return tp + fp + tn + fn; }
  void add(int truth, int predicted);
};

struct ClassMetrics {
  double precision = 0.0;  // fraction in [0, 1]
  double recall = 0.0;     // fraction in [0, 1]
  double f1 = 0.0;         // fraction in [0, 1]
  double cer = 0.0;        // misclassification rate, percent in [0, 100]
};

// Positive class = error present. Throws EmptyConfusion when total() == 0.
ClassMetrics classification_metrics(const Confusion& c);

// Harmonic mean 2PR/(P+R); same scale as its inputs, 0 when P+R == 0.
double f1_from_pr(double p, double r);

// ---------------------------------------------------------------------------
// Breakdown report

struct Prediction {
  std::string id;
  double score = 0.0;  // entailment probability e
  int predicted = 0;   // 1 = error flagged
};

struct ReportEntry {
  Confusion confusion;
  ClassMetrics metrics;
  std::uint64_t examples = 0;
};

struct ErrorReport {
  ReportEntry overall;
  std::map<ontology::SemanticGroup, ReportEntry> by_group;
  std::map<std::string, ReportEntry> by_term;
  std::uint64_t examples = 0;
  std::uint64_t positives = 0;  // true labels
  std::uint64_t negatives = 0;
};

// Scores predictions against the manifest's labels (per `target`). A segment
// contributes to every semantic group and term found in its reference text,
// so per-group confusions can overlap. Groups and terms with no examples are
// omitted. Throws MissingPrediction if an example id has no prediction.
ErrorReport breakdown(std::span<const Prediction> preds,
                      std::span<const dataset::EntailmentExample> examples,
                      const ontology::Lexicon& lex,
                      dataset::LabelField target);

enum class ReportFormat { Text, Json };

// Deterministic rendering. Text mirrors a fixed-width P/R/F1/CER table;
// JSON follows a stable schema {"overall":..., "by_group":..., "by_term":...,
// "counts":...}.
std::string render_report(const ErrorReport& report, ReportFormat format);

}  // namespace asrward::metrics
