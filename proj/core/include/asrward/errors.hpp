// Copyright 2026 the asr-ward authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace asrward {

// Error taxonomy shared by the whole toolchain. The CLI maps categories to
// process exit codes: input/format problems -> 2, data-contract violations
// -> 3, internal invariant breakage -> 4.
enum class Errc {
  Io,
  Format,
  Schema,
  Range,
  DimMismatch,
  SegmentationMismatch,
  EmptyClass,
  TooFewExamples,
  EmptyInput,
  EmptyReference,
  EmptyConfusion,
  TooShort,
  EncoderResolution,
  MissingPrediction,
  Internal,
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitInternal = 4;

constexpr int exit_code_for(Errc c) {
  switch (c) {
    case Errc::Io:
    case Errc::Format:
    case Errc::Schema:
    case Errc::Range:
    case Errc::DimMismatch:
      return kExitInput;
    case Errc::SegmentationMismatch:
    case Errc::EmptyClass:
    case Errc::TooFewExamples:
    case Errc::EmptyInput:
    case Errc::EmptyReference:
    case Errc::EmptyConfusion:
    case Errc::TooShort:
    case Errc::EncoderResolution:
    case Errc::MissingPrediction:
      return kExitData;
    case Errc::Internal:
      return kExitInternal;
  }
  return kExitInternal;
}

constexpr const char* errc_name(Errc c) {
  switch (c) {
    case Errc::Io: return "IoError";
    case Errc::Format: return "FormatError";
    case Errc::Schema: return "SchemaError";
    case Errc::Range: return "RangeError";
    case Errc::DimMismatch: return "DimMismatch";
    case Errc::SegmentationMismatch: return "SegmentationMismatch";
    case Errc::EmptyClass: return "EmptyClass";
    case Errc::TooFewExamples: return "TooFewExamples";
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::EmptyReference: return "EmptyReference";
    case Errc::EmptyConfusion: return "EmptyConfusion";
    case Errc::TooShort: return "TooShort";
    case Errc::EncoderResolution: return "EncoderResolutionError";
    case Errc::MissingPrediction: return "MissingPrediction";
    case Errc::Internal: return "InternalError";
  }
  return "InternalError";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}

  Errc code() const noexcept { return code_; }
  int exit_code() const noexcept { return exit_code_for(code_); }

 private:
  Errc code_;
};

}  // namespace asrward
