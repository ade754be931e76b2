// Copyright 2026 the asr-ward authors
// SPDX-License-Identifier: Apache-2.0
//
// Deterministic text cleaning used ahead of alignment and term matching:
// whitespace tokenization, lowercasing, punctuation stripping, a fixed-rule
// suffix stemmer, and a rule-based sentence splitter.

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace asrward::textnorm {

struct Token {
  std::string surface;       // original word as it appeared
  std::string norm;          // lowercased, punctuation-free, stemmed
  std::size_t source_index;  // position in the pre-drop whitespace word stream
};

struct Segment {
  std::vector<Token> tokens;
  double start_s = 0.0;
  double end_s = 0.0;
  std::string speaker;
};

// Whitespace-splits `text`, lowercases each word, removes punctuation
// (leading, trailing, and interior; "it's" stays one word "its"), stems, and
// drops words that normalize to nothing. source_index counts positions in
// the pre-drop word stream.
std::vector<Token> normalize(std::string_view text);

// Fixed-rule suffix stripper (-ing, -ed, -es, -s, -ly), minimum stem length
// 3, applied to fixed point so the result is idempotent. A small exception
// table restores a trailing 'e' (doses -> dose). Expects a lowercase,
// punctuation-free word.
std::string stem(std::string_view word);

// Splits on . ? ! followed by whitespace and a capital letter (or end of
// text). An abbreviation guard list (dr., mr., mrs., st., ...) suppresses
// false splits. Sentences are trimmed; rejoining them reproduces the input
// up to inter-sentence whitespace.
std::vector<std::string> sentence_split(std::string_view text);

// True if the byte at `pos` starts a punctuation character (ASCII
// punctuation or a typographic quote/dash/ellipsis); on match, `len` gets
// the byte length of that character.
bool is_punct_at(std::string_view s, std::size_t pos, std::size_t& len);

}  // namespace asrward::textnorm
