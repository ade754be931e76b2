// Copyright 2026 the asr-ward authors
// SPDX-License-Identifier: Apache-2.0
//
// Conversation transcript ingestion: the JSON exchange format and the
// sentence-level segmentation that feeds alignment.

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "asrward/textnorm.hpp"

namespace asrward::transcript {

struct Utterance {
  std::string speaker;
  double start_s = 0.0;
  double end_s = 0.0;
  std::string text;
};

struct Conversation {
  std::string id;
  std::string audio_path;  // optional; needed only to train on audio
  std::vector<Utterance> utterances;
};

// Reads either a single conversation object or an array of them.
// Conversation ids must be unique within a file.
std::vector<Conversation> read_conversations(const std::filesystem::path& path);
std::vector<Conversation> parse_conversations(const std::string& text,
                                              const std::string& origin);
void write_conversations(const std::vector<Conversation>& conversations,
                         const std::filesystem::path& path);

// Token stream plus sentence segments of one conversation. Each utterance is
// sentence-split; a sentence becomes one segment whose times interpolate the
// utterance span proportionally to token counts. Sentences that normalize to
// no tokens are dropped.
struct TokenizedConversation {
  std::vector<textnorm::Token> stream;
  std::vector<textnorm::Segment> segments;
  std::vector<std::string> segment_texts;  // original sentence per segment
};

TokenizedConversation build_segments(const Conversation& conversation);

}  // namespace asrward::transcript
