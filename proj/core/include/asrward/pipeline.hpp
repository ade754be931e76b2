// Copyright 2026 the asr-ward authors
// SPDX-License-Identifier: Apache-2.0
//
// Pipeline configuration and the five CLI commands as library functions:
// align, dataset, simulate, train, evaluate. The run_* forms throw
// asrward::Error; the cmd_* forms map errors to exit codes (0 ok, 2 input,
// 3 data contract, 4 internal) with diagnostics on stderr.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "asrward/alignment.hpp"
#include "asrward/dataset.hpp"
#include "asrward/entail.hpp"
#include "asrward/metrics.hpp"
#include "asrward/simulate.hpp"

namespace asrward::pipeline {

struct PipelineConfig {
  align::AlignParams align_params;
  std::string lexicon_path;
  std::uint64_t seed = 42;
  std::size_t d_proj = 64;
  entail::TrainConfig train;
  entail::EncoderPair encoders;
  double min_duration_s = 1.0;
  double max_duration_s = 30.0;
  std::size_t sim_max_edit = 2;
  double threshold = 0.5;

  // d_a / d_l follow the encoder specs.
  entail::HeadDims head_dims() const {
    return {encoders.acoustic.dim, encoders.linguistic.dim, d_proj};
  }
  void validate() const;
};

// Loads a JSON config file; fields not present keep their defaults.
PipelineConfig load_config(const std::filesystem::path& path);
// Same, from a JSON string (origin used in error messages).
PipelineConfig parse_config(const std::string& text, const std::string& origin);

// Dataset task selector: every dataset run emits manifests for both.
inline constexpr const char* kTaskAll = "all";
inline constexpr const char* kTaskMedical = "med";
dataset::LabelField label_field_for_task(const std::string& task);

// ---------------------------------------------------------------------------
// align

struct AlignSummary {
  std::size_t conversations = 0;
  std::size_t pairs = 0;
  double wer = 0.0;
  double bleu = 0.0;
  std::optional<metrics::PrF> medical;  // present when a lexicon is configured
};

AlignSummary run_align(const std::filesystem::path& ref_path,
                       const std::filesystem::path& hyp_path,
                       const std::filesystem::path& out_path,
                       const PipelineConfig& config);

// ---------------------------------------------------------------------------
// dataset

struct DatasetSummary {
  std::size_t pairs_in = 0;
  std::size_t after_duration_filter = 0;
  struct TaskCounts {
    std::size_t balanced = 0;
    std::size_t train = 0, val = 0, test = 0;
  };
  TaskCounts all, medical;
};

DatasetSummary run_dataset(const std::filesystem::path& aligned_path,
                           const std::filesystem::path& lexicon_path,
                           const std::filesystem::path& out_dir,
                           const PipelineConfig& config);

// ---------------------------------------------------------------------------
// simulate

struct SimulateSummary {
  std::size_t examples = 0;
  simulate::SimulateStats stats;
};

// vocab_path may be empty: the vocabulary is then collected from the
// manifest's reference and hypothesis texts.
SimulateSummary run_simulate(const std::filesystem::path& manifest_path,
                             const std::filesystem::path& vocab_path,
                             const std::filesystem::path& out_path,
                             const PipelineConfig& config);

// ---------------------------------------------------------------------------
// train

struct TrainSummary {
  std::size_t train_examples = 0;
  std::size_t val_examples = 0;
  double final_train_loss = 0.0;
  std::optional<double> final_val_accuracy;
  std::optional<double> final_val_cer;
};

TrainSummary run_train(const std::filesystem::path& manifest_dir,
                       const std::string& task,
                       const std::filesystem::path& checkpoint_out,
                       const std::filesystem::path& history_out,
                       const PipelineConfig& config);

// ---------------------------------------------------------------------------
// evaluate

struct EvaluateSummary {
  std::size_t examples = 0;
  metrics::ClassMetrics overall;
};

// Writes <report_out>.json and <report_out>.txt.
EvaluateSummary run_evaluate(const std::filesystem::path& manifest_path,
                             const std::filesystem::path& checkpoint_path,
                             const std::filesystem::path& lexicon_path,
                             const std::filesystem::path& report_out,
                             const std::string& task,
                             const PipelineConfig& config);

// ---------------------------------------------------------------------------
// exit-code wrappers

int cmd_align(const std::filesystem::path& ref_path,
              const std::filesystem::path& hyp_path,
              const std::filesystem::path& out_path,
              const PipelineConfig& config) noexcept;
int cmd_dataset(const std::filesystem::path& aligned_path,
                const std::filesystem::path& lexicon_path,
                const std::filesystem::path& out_dir,
                const PipelineConfig& config) noexcept;
int cmd_simulate(const std::filesystem::path& manifest_path,
                 const std::filesystem::path& vocab_path,
                 const std::filesystem::path& out_path,
                 const PipelineConfig& config) noexcept;
int cmd_train(const std::filesystem::path& manifest_dir,
              const std::string& task,
              const std::filesystem::path& checkpoint_out,
              const std::filesystem::path& history_out,
              const PipelineConfig& config) noexcept;
int cmd_evaluate(const std::filesystem::path& manifest_path,
                 const std::filesystem::path& checkpoint_path,
                 const std::filesystem::path& lexicon_path,
                 const std::filesystem::path& report_out,
                 const std::string& task,
                 const PipelineConfig& config) noexcept;

// Manifest filename for a task and split, e.g. ("med", "train") ->
// "med_train.jsonl".
std::string manifest_filename(const std::string& task,
                              const std::string& split);

}  // namespace asrward::pipeline
