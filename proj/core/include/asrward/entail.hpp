// Copyright 2026 the asr-ward authors
// SPDX-License-Identifier: Apache-2.0
//
// Audio-transcript entailment classifier: mean-pool each modality, project
// both into a shared space, concatenate, and score with a sigmoid unit.
// Encoders are frozen by construction; only the head parameters train.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "asrward/dataset.hpp"
#include "asrward/encoders.hpp"

namespace asrward::entail {

struct HeadDims {
  std::size_t d_a = 11;   // acoustic feature dim
  std::size_t d_l = 16;   // linguistic feature dim
  std::size_t d_proj = 64;

  bool operator==(const HeadDims&) const = default;
};

// Trainable tensors. Matrices are row-major: W_a is [d_proj x d_a], W_l is
// [d_proj x d_l], W_e is [2*d_proj].
struct HeadParams {
  HeadDims dims;
  std::vector<double> w_a, b_a;
  std::vector<double> w_l, b_l;
  std::vector<double> w_e;
  double b_e = 0.0;
  std::uint64_t seed = 0;

  void validate() const;
};

enum class Optimizer { Sgd, Adam };

struct TrainConfig {
  double learning_rate = 1e-3;
  std::size_t epochs = 20;
  std::size_t batch_size = 16;
  std::uint64_t seed = 42;
  Optimizer optimizer = Optimizer::Adam;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_eps = 1e-8;

  void validate() const;
};

// Arithmetic mean over frames. Throws EmptySequence-style EmptyInput when
// the sequence has no frames.
std::vector<double> mean_pool(const encoders::FeatureSequence& seq);

// One example reduced to its pooled modality vectors.
struct PooledExample {
  std::vector<double> acoustic;
  std::vector<double> linguistic;
  int label = 0;
  std::string id;
};

// sigma(W_e . concat(W_a a + b_a, W_l l + b_l) + b_e) for pooled vectors.
double forward_pooled(std::span<const double> acoustic,
                      std::span<const double> linguistic,
                      const HeadParams& p);

double forward(const encoders::FeatureSequence& acoustic,
               const encoders::FeatureSequence& linguistic,
               const HeadParams& p);

// Binary cross-entropy with the probability clamped to [1e-7, 1 - 1e-7].
double loss(double e, int y);

struct Gradients {
  std::vector<double> w_a, b_a, w_l, b_l, w_e;
  double b_e = 0.0;
};

// Mean gradient of the loss over the batch w.r.t. every head parameter
// (closed form through the sigmoid and both linear layers).
Gradients gradients(std::span<const PooledExample> batch, const HeadParams& p);

// Uniform +-1/sqrt(fan_in) initialization, fully determined by seed.
HeadParams init_params(const HeadDims& dims, std::uint64_t seed);

struct EpochStats {
  std::size_t epoch = 0;
  double train_loss = 0.0;
  std::optional<double> val_accuracy;
  std::optional<double> val_cer;  // percent
};

struct TrainResult {
  HeadParams params;
  std::vector<EpochStats> history;
};

// Mini-batch training over pooled examples; deterministic for a fixed
// config. Per-epoch metrics on `val` are recorded when it is non-null.
TrainResult train_pooled(std::span<const PooledExample> train,
                         const std::vector<PooledExample>* val,
                         const HeadDims& dims, const TrainConfig& cfg);

struct Prediction {
  std::string id;
  double score = 0.0;
  int predicted = 0;
};

std::vector<Prediction> predict_pooled(std::span<const PooledExample> examples,
                                       const HeadParams& p,
                                       double threshold = 0.5);

// ---------------------------------------------------------------------------
// Feature resolution: turns manifest examples into pooled vectors through a
// pair of frozen encoder specs.

struct EncoderPair {
  encoders::EncoderSpec acoustic{encoders::EncoderKind::ToyAcoustic, 11, {}};
  encoders::EncoderSpec linguistic{encoders::EncoderKind::ToyLinguistic, 16, {}};
};

// Resolves and pools features for every example (in parallel); labels come
// from `target`. File encoders look for
// <dir>/<id with ':' -> '_'><suffix> where suffix defaults to ".a.feat" /
// ".l.feat". Throws EncoderResolutionError when a source is missing.
std::vector<PooledExample> resolve_pooled(
    std::span<const dataset::EntailmentExample> examples,
    const EncoderPair& enc, dataset::LabelField target);

// End-to-end helpers over manifests.
TrainResult train(const dataset::DatasetManifest& manifest,
                  const dataset::DatasetManifest* val_manifest,
                  const EncoderPair& enc, dataset::LabelField target,
                  const HeadDims& dims, const TrainConfig& cfg);

std::vector<Prediction> predict(const dataset::DatasetManifest& manifest,
                                const EncoderPair& enc, const HeadParams& p,
                                dataset::LabelField target,
                                double threshold = 0.5);

// Checkpoint format "awhead-1": a JSON object with dims and all tensors.
void save_params(const HeadParams& p, const std::filesystem::path& path);
HeadParams load_params(const std::filesystem::path& path);

}  // namespace asrward::entail
