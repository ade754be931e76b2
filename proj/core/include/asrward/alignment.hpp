// Copyright 2026 the asr-ward authors
// SPDX-License-Identifier: Apache-2.0
//
// Word-level local alignment (Smith-Waterman) of reference vs. hypothesis
// token streams, and projection of the global alignment onto reference
// segments.

#pragma once

#include <optional>
#include <span>
#include <vector>

#include "asrward/textnorm.hpp"

namespace asrward::align {

struct AlignParams {
  double match_score = 2.0;
  double mismatch_penalty = -1.0;
  double gap_penalty = -1.0;

  // match_score > 0, penalties <= 0, |gap_penalty| < match_score.
  void validate() const;
};

enum class EditKind { Match, Substitute, Insert, Delete };

const char* to_string(EditKind k);
std::optional<EditKind> edit_kind_from_string(std::string_view s);

// One step of an alignment trace. Match/Substitute carry both indices,
// Insert only hyp_index, Delete only ref_index. Indices refer to the token
// streams the trace was computed over.
struct EditOp {
  EditKind kind;
  std::optional<std::size_t> ref_index;
  std::optional<std::size_t> hyp_index;

  bool operator==(const EditOp&) const = default;
};

struct SwResult {
  std::vector<EditOp> trace;
  double score = 0.0;
};

// Maximal-scoring local alignment under the standard recurrence with a zero
// floor. Tokens compare equal on norm. Per-cell ties break diagonal > up >
// left; among equally scoring alignments the one starting earliest in the
// reference wins, and among those the one extending furthest.
SwResult smith_waterman(std::span<const textnorm::Token> ref,
                        std::span<const textnorm::Token> hyp,
                        const AlignParams& params);

// A reference segment paired with the hypothesis span its trace slice
// covers. Trace indices are global stream indices; ref tokens of the segment
// that the global alignment did not reach appear as Delete ops so that the
// trace always covers the whole reference segment. score is the sum of
// per-op scores under the params used. hyp_segment.tokens may be empty.
struct AlignedPair {
  textnorm::Segment ref_segment;
  textnorm::Segment hyp_segment;
  std::vector<EditOp> trace;
  double score = 0.0;
  std::size_t ref_start = 0;  // stream index of ref_segment.tokens[0]
  std::size_t hyp_start = 0;  // stream index of hyp_segment.tokens[0]
};

// Runs one global smith_waterman pass over the full streams and cuts the
// trace at reference-segment boundaries. Insert ops attach to the segment of
// the next reference-consuming op. Segments must partition their streams in
// order (SegmentationMismatch otherwise).
std::vector<AlignedPair> align_transcripts(
    std::span<const textnorm::Token> ref_tokens,
    std::span<const textnorm::Token> hyp_tokens,
    std::span<const textnorm::Segment> ref_segments,
    std::span<const textnorm::Segment> hyp_segments,
    const AlignParams& params);

// Score of a single op under params: Match -> match_score, Substitute ->
// mismatch_penalty, Insert/Delete -> gap_penalty.
double op_score(EditKind k, const AlignParams& params);

}  // namespace asrward::align
