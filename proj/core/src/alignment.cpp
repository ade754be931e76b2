// Copyright 2026 the asr-ward authors
// SPDX-License-Identifier: Apache-2.0

#include "asrward/alignment.hpp"

#include <algorithm>
#include <cstdint>
#include <string>

#include "asrward/errors.hpp"

namespace asrward::align {

void AlignParams::validate() const {
  if (!(match_score > 0.0))
    throw Error(Errc::Range, "match_score must be > 0");
  if (!(mismatch_penalty <= 0.0))
    throw Error(Errc::Range, "mismatch_penalty must be <= 0");
  if (!(gap_penalty <= 0.0))
    throw Error(Errc::Range, "gap_penalty must be <= 0");
  if (!(-gap_penalty < match_score))
    throw Error(Errc::Range, "|gap_penalty| must be < match_score");
}

const char* to_string(EditKind k) {
  switch (k) {
    case EditKind::Match: return "match";
    case EditKind::Substitute: return "substitute";
    case EditKind::Insert: return "insert";
    case EditKind::Delete: return "delete";
  }
  return "match";
}

std::optional<EditKind> edit_kind_from_string(std::string_view s) {
  if (s == "match") return EditKind::Match;
  if (s == "substitute") return EditKind::Substitute;
  if (s == "insert") return EditKind::Insert;
  if (s == "delete") return EditKind::Delete;
  return std::nullopt;
}

double op_score(EditKind k, const AlignParams& params) {
  switch (k) {
    case EditKind::Match: return params.match_score;
    case EditKind::Substitute: return params.mismatch_penalty;
    case EditKind::Insert:
    case EditKind::Delete: return params.gap_penalty;
  }
  return 0.0;
}

namespace {

enum Dir : std::uint8_t { kStop = 0, kDiag = 1, kUp = 2, kLeft = 3 };

}  // namespace

SwResult smith_waterman(std::span<const textnorm::Token> ref,
                        std::span<const textnorm::Token> hyp,
                        const AlignParams& params) {
  params.validate();
  const std::size_t n = ref.size();
  const std::size_t m = hyp.size();
  SwResult result;
  if (n == 0 || m == 0) return result;

  // H and the direction chosen at fill time. Directions are decided with the
  // same diag > up > left preference the traceback uses, so the traceback is
  // a pure table walk. origin tracks where each cell's path begins, for the
  // end-cell tie-break: equal scores prefer the alignment starting earliest
  // in the reference, and among those the one reaching furthest.
  std::vector<double> h((n + 1) * (m + 1), 0.0);
  std::vector<std::uint8_t> dir((n + 1) * (m + 1), kStop);
  std::vector<std::uint64_t> origin((n + 1) * (m + 1), 0);
  auto at = [m](std::size_t i, std::size_t j) { return i * (m + 1) + j; };
  auto pack = [](std::size_t i, std::size_t j) {
    return (static_cast<std::uint64_t>(i) << 32) | static_cast<std::uint64_t>(j);
  };

  double best = 0.0;
  std::size_t best_i = 0, best_j = 0;
  std::uint64_t best_origin = 0;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      double sub = ref[i - 1].norm == hyp[j - 1].norm ? params.match_score
                                                      : params.mismatch_penalty;
      double diag = h[at(i - 1, j - 1)] + sub;
      double up = h[at(i - 1, j)] + params.gap_penalty;
      double left = h[at(i, j - 1)] + params.gap_penalty;

      double v = 0.0;
      std::uint8_t d = kStop;
      if (diag > v) { v = diag; d = kDiag; }
      if (up > v) { v = up; d = kUp; }
      if (left > v) { v = left; d = kLeft; }
      std::size_t idx = at(i, j);
      h[idx] = v;
      if (v == 0.0) {
        dir[idx] = kStop;
        continue;
      }
      dir[idx] = d;
      std::size_t pi = d == kDiag ? i - 1 : (d == kUp ? i - 1 : i);
      std::size_t pj = d == kDiag ? j - 1 : (d == kUp ? j : j - 1);
      std::size_t pidx = at(pi, pj);
      origin[idx] = dir[pidx] == kStop ? pack(pi, pj) : origin[pidx];

      // Same score: earlier start wins; same start: later end (scan order)
      // wins, so maximal ties extend as far as the score allows.
      bool better =
          v > best || (v == best && origin[idx] <= best_origin);
      if (better) {
        best = v;
        best_i = i;
        best_j = j;
        best_origin = origin[idx];
      }
    }
  }
  if (best == 0.0) return result;

  std::size_t i = best_i, j = best_j;
  std::vector<EditOp> rev;
  while (dir[at(i, j)] != kStop) {
    switch (dir[at(i, j)]) {
      case kDiag: {
        bool eq = ref[i - 1].norm == hyp[j - 1].norm;
        rev.push_back(EditOp{eq ? EditKind::Match : EditKind::Substitute,
                             i - 1, j - 1});
        --i;
        --j;
        break;
      }
      case kUp:
        rev.push_back(EditOp{EditKind::Delete, i - 1, std::nullopt});
        --i;
        break;
      case kLeft:
        rev.push_back(EditOp{EditKind::Insert, std::nullopt, j - 1});
        --j;
        break;
      default:
        throw Error(Errc::Internal, "corrupt traceback table");
    }
  }
  result.trace.assign(rev.rbegin(), rev.rend());
  result.score = best;
  return result;
}

namespace {

struct SegRange {
  std::size_t begin = 0;
  std::size_t end = 0;  // exclusive
};

std::vector<SegRange> partition_ranges(
    std::span<const textnorm::Token> stream,
    std::span<const textnorm::Segment> segments, const char* side) {
  std::vector<SegRange> ranges;
  ranges.reserve(segments.size());
  std::size_t pos = 0;
  for (const auto& seg : segments) {
    SegRange r{pos, pos + seg.tokens.size()};
    if (r.end > stream.size())
      throw Error(Errc::SegmentationMismatch,
                  std::string(side) + " segments overrun the token stream");
    for (std::size_t k = 0; k < seg.tokens.size(); ++k) {
      if (seg.tokens[k].norm != stream[r.begin + k].norm)
        throw Error(Errc::SegmentationMismatch,
                    std::string(side) + " segment tokens disagree with stream");
    }
    ranges.push_back(r);
    pos = r.end;
  }
  if (pos != stream.size())
    throw Error(Errc::SegmentationMismatch,
                std::string(side) + " segments do not cover the token stream");
  return ranges;
}

}  // namespace

std::vector<AlignedPair> align_transcripts(
    std::span<const textnorm::Token> ref_tokens,
    std::span<const textnorm::Token> hyp_tokens,
    std::span<const textnorm::Segment> ref_segments,
    std::span<const textnorm::Segment> hyp_segments,
    const AlignParams& params) {
  auto ref_ranges = partition_ranges(ref_tokens, ref_segments, "reference");
  auto hyp_ranges = partition_ranges(hyp_tokens, hyp_segments, "hypothesis");

  SwResult global = smith_waterman(ref_tokens, hyp_tokens, params);

  // Assign each global op to a reference segment. Inserts take the segment
  // of the next reference-consuming op; a trace always ends with one.
  std::vector<std::vector<EditOp>> slices(ref_segments.size());
  {
    auto segment_of = [&](std::size_t ref_index) {
      for (std::size_t s = 0; s < ref_ranges.size(); ++s) {
        if (ref_index >= ref_ranges[s].begin && ref_index < ref_ranges[s].end)
          return s;
      }
      throw Error(Errc::Internal, "ref index outside all segments");
    };
    std::vector<std::size_t> op_segment(global.trace.size(), 0);
    std::size_t next_seg = 0;
    for (std::size_t k = global.trace.size(); k-- > 0;) {
      const EditOp& op = global.trace[k];
      if (op.ref_index.has_value()) next_seg = segment_of(*op.ref_index);
      op_segment[k] = next_seg;
    }
    for (std::size_t k = 0; k < global.trace.size(); ++k)
      slices[op_segment[k]].push_back(global.trace[k]);
  }

  std::vector<AlignedPair> pairs;
  pairs.reserve(ref_segments.size());
  for (std::size_t s = 0; s < ref_segments.size(); ++s) {
    AlignedPair pair;
    pair.ref_segment = ref_segments[s];
    pair.ref_start = ref_ranges[s].begin;

    const auto& slice = slices[s];
    bool have_hyp = false;
    std::size_t hyp_lo = 0, hyp_hi = 0;  // inclusive
    std::size_t ref_cov_lo = ref_ranges[s].end, ref_cov_hi = ref_ranges[s].begin;
    for (const EditOp& op : slice) {
      if (op.hyp_index.has_value()) {
        if (!have_hyp) {
          hyp_lo = hyp_hi = *op.hyp_index;
          have_hyp = true;
        } else {
          hyp_lo = std::min(hyp_lo, *op.hyp_index);
          hyp_hi = std::max(hyp_hi, *op.hyp_index);
        }
      }
      if (op.ref_index.has_value()) {
        ref_cov_lo = std::min(ref_cov_lo, *op.ref_index);
        ref_cov_hi = std::max(ref_cov_hi, *op.ref_index);
      }
    }

    // Complete the trace with Delete ops for segment tokens the global
    // alignment never reached, keeping ref indices strictly increasing.
    std::vector<EditOp> trace;
    bool any_ref_covered = ref_cov_lo <= ref_cov_hi;
    if (!any_ref_covered) {
      // A non-empty slice always covers a ref token (inserts attach to the
      // segment of a following ref-consuming op), so this is the empty case.
      for (std::size_t r = ref_ranges[s].begin; r < ref_ranges[s].end; ++r)
        trace.push_back(EditOp{EditKind::Delete, r, std::nullopt});
    } else {
      for (std::size_t r = ref_ranges[s].begin; r < ref_cov_lo; ++r)
        trace.push_back(EditOp{EditKind::Delete, r, std::nullopt});
      trace.insert(trace.end(), slice.begin(), slice.end());
      for (std::size_t r = ref_cov_hi + 1; r < ref_ranges[s].end; ++r)
        trace.push_back(EditOp{EditKind::Delete, r, std::nullopt});
    }

    pair.trace = std::move(trace);
    pair.score = 0.0;
    for (const EditOp& op : pair.trace)
      pair.score += op_score(op.kind, params);

    if (have_hyp) {
      pair.hyp_start = hyp_lo;
      pair.hyp_segment.tokens.assign(hyp_tokens.begin() + hyp_lo,
                                     hyp_tokens.begin() + hyp_hi + 1);
      // Times come from the enclosing hypothesis segments.
      auto enclosing = [&](std::size_t idx) {
        for (std::size_t t = 0; t < hyp_ranges.size(); ++t)
          if (idx >= hyp_ranges[t].begin && idx < hyp_ranges[t].end) return t;
        throw Error(Errc::Internal, "hyp index outside all segments");
      };
      pair.hyp_segment.start_s = hyp_segments[enclosing(hyp_lo)].start_s;
      pair.hyp_segment.end_s = hyp_segments[enclosing(hyp_hi)].end_s;
      pair.hyp_segment.speaker = hyp_segments[enclosing(hyp_lo)].speaker;
    } else {
      pair.hyp_start = 0;
      pair.hyp_segment.start_s = pair.ref_segment.start_s;
      pair.hyp_segment.end_s = pair.ref_segment.end_s;
    }
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

}  // namespace asrward::align
