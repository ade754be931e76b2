// Copyright 2026 the asr-ward authors
// SPDX-License-Identifier: Apache-2.0
//
// UMLS-style term lexicon and n-gram dictionary matching over normalized
// token streams.

#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "asrward/textnorm.hpp"

namespace asrward::ontology {

enum class SemanticGroup {
  ChemicalsAndDrugs,
  Disorders,
  Procedures,
  Anatomy,
  Physiology,
  Other,
};

inline constexpr SemanticGroup kAllGroups[] = {
    SemanticGroup::ChemicalsAndDrugs, SemanticGroup::Disorders,
    SemanticGroup::Procedures,        SemanticGroup::Anatomy,
    SemanticGroup::Physiology,        SemanticGroup::Other,
};

const char* to_string(SemanticGroup g);
// Case-insensitive; accepts exactly the six enum names.
std::optional<SemanticGroup> group_from_string(std::string_view s);

struct TermHit {
  std::string term;  // lexicon key (normalized, space-joined)
  SemanticGroup group = SemanticGroup::Other;
  std::size_t start = 0;  // token index
  std::size_t len = 0;    // tokens

  bool operator==(const TermHit&) const = default;
};

struct Lexicon {
  // normalized term (space-joined stemmed tokens) -> group
  std::unordered_map<std::string, SemanticGroup> entries;
  std::size_t max_ngram = 1;
  std::vector<std::string> warnings;  // duplicate keys, unknown groups

  // Stable content hash (entries only), recorded in dataset manifests.
  std::string hash() const;
};

// Loads a TSV lexicon: `term<TAB>group` per row, '#' comment lines and blank
// lines ignored. Terms are normalized exactly as textnorm::normalize would.
// Duplicate normalized keys keep the first group; unknown group names map to
// Other. Both emit a warning.
Lexicon load_lexicon(const std::filesystem::path& path);

// Greedy longest-match left-to-right scan; hits never overlap and are
// reported in order of their start index.
std::vector<TermHit> find_terms(std::span<const textnorm::Token> tokens,
                                const Lexicon& lex);

// Space-joins token norms in [start, start+len).
std::string joined_norms(std::span<const textnorm::Token> tokens,
                         std::size_t start, std::size_t len);

// True if `term` (a normalized space-joined key) occurs contiguously in the
// token norms.
bool term_occurs(std::string_view term,
                 std::span<const textnorm::Token> tokens);

}  // namespace asrward::ontology
