// Copyright 2026 the asr-ward authors
// SPDX-License-Identifier: Apache-2.0
//
// Frozen feature providers for both modalities: WAV ingestion with
// zero-mean/unit-variance standardization, deterministic toy acoustic and
// linguistic features, and a binary feature-file carrier for embeddings
// exported from real encoders out of process.

#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "asrward/textnorm.hpp"

namespace asrward::encoders {

struct AudioSegment {
  std::vector<double> samples;  // standardized: zero mean, unit variance
  int sample_rate = 0;
  std::string path;
  double start_s = 0.0;
  double end_s = 0.0;
  bool silent = false;  // set when the raw span had ~zero variance
};

// Variable-length sequence of fixed-dimension frames, stored row-major.
struct FeatureSequence {
  std::vector<double> values;
  std::size_t dim = 0;

  std::size_t frames() const { return dim == 0 ? 0 : values.size() / dim; }
  std::span<const double> frame(std::size_t i) const {
    return {values.data() + i * dim, dim};
  }
};

enum class EncoderKind { FileAcoustic, FileLinguistic, ToyAcoustic, ToyLinguistic };

const char* to_string(EncoderKind k);
std::optional<EncoderKind> encoder_kind_from_string(std::string_view s);

struct EncoderSpec {
  EncoderKind kind = EncoderKind::ToyAcoustic;
  std::size_t dim = 11;
  // Free-form options; file encoders use "dir" (feature directory) and
  // optional "suffix".
  std::map<std::string, std::string> params;
};

// Reads a PCM 16-bit mono WAV span [start_s, end_s], converts to [-1, 1]
// doubles, and standardizes to zero mean / unit variance. A near-zero
// variance span comes back all-zero with `silent` set.
AudioSegment load_audio(const std::filesystem::path& path, double start_s,
                        double end_s);

inline constexpr std::size_t kToyAcousticBaseDim = 11;

// Per 25ms/10ms frame: log energy, zero-crossing rate, spectral centroid
// over 8 fixed Goertzel bands, and the 8 band log energies; zero-padded to
// `dim` (>= 11).
FeatureSequence toy_acoustic(const AudioSegment& seg, std::size_t dim,
                             double frame_ms = 25.0, double hop_ms = 10.0);

// Per token: a unit vector drawn from a generator seeded by a stable 64-bit
// hash of the norm, so the same word maps to the same vector on every
// platform. dim must be >= 8.
FeatureSequence toy_linguistic(std::span<const textnorm::Token> tokens,
                               std::size_t dim);

// Feature file format "AWFEAT1\0": u32 dim, u32 frame count, then dim*count
// little-endian float32, row-major by frame.
FeatureSequence read_features(const std::filesystem::path& path);
void write_features(const FeatureSequence& seq,
                    const std::filesystem::path& path);

}  // namespace asrward::encoders
