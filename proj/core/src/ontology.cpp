// Copyright 2026 the asr-ward authors
// SPDX-License-Identifier: Apache-2.0

#include "asrward/ontology.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>

#include "asrward/errors.hpp"
#include "asrward/rng.hpp"

namespace asrward::ontology {

const char* to_string(SemanticGroup g) {
  switch (g) {
    case SemanticGroup::ChemicalsAndDrugs: return "ChemicalsAndDrugs";
    case SemanticGroup::Disorders: return "Disorders";
    case SemanticGroup::Procedures: return "Procedures";
    case SemanticGroup::Anatomy: return "Anatomy";
    case SemanticGroup::Physiology: return "Physiology";
    case SemanticGroup::Other: return "Other";
  }
  return "Other";
}

std::optional<SemanticGroup> group_from_string(std::string_view s) {
  std::string lower(s);
  for (char& c : lower)
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  for (SemanticGroup g : kAllGroups) {
    std::string name = to_string(g);
    for (char& c : name)
      c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (lower == name) return g;
  }
  return std::nullopt;
}

std::string Lexicon::hash() const {
  std::vector<std::string> lines;
  lines.reserve(entries.size());
  for (const auto& [term, group] : entries)
    lines.push_back(term + "\t" + to_string(group));
  std::sort(lines.begin(), lines.end());
  std::uint64_t h = fnv1a64("awlex-1");
  for (const auto& line : lines) h = hash_combine(h, fnv1a64(line));
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

Lexicon load_lexicon(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::Io, "cannot open lexicon " + path.string());

  Lexicon lex;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;

    std::size_t tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos)
      throw Error(Errc::Format, "lexicon " + path.string() + " line " +
                                    std::to_string(line_no) +
                                    ": expected `term<TAB>group`");
    std::string surface = line.substr(0, tab);
    std::string group_name = line.substr(tab + 1);

    auto tokens = textnorm::normalize(surface);
    if (tokens.empty()) {
      lex.warnings.push_back("line " + std::to_string(line_no) +
                             ": term normalizes to nothing, skipped");
      continue;
    }
    std::string key = joined_norms(tokens, 0, tokens.size());

    SemanticGroup group = SemanticGroup::Other;
    if (auto g = group_from_string(group_name)) {
      group = *g;
    } else {
      lex.warnings.push_back("line " + std::to_string(line_no) +
                             ": unknown group '" + group_name +
                             "' mapped to Other");
    }

    auto [it, inserted] = lex.entries.emplace(key, group);
    if (!inserted) {
      lex.warnings.push_back("line " + std::to_string(line_no) +
                             ": duplicate term '" + key +
                             "', first group kept");
      continue;
    }
    lex.max_ngram = std::max(lex.max_ngram, tokens.size());
  }
  return lex;
}

std::string joined_norms(std::span<const textnorm::Token> tokens,
                         std::size_t start, std::size_t len) {
  std::string out;
  for (std::size_t i = start; i < start + len; ++i) {
    if (i > start) out.push_back(' ');
    out += tokens[i].norm;
  }
  return out;
}

std::vector<TermHit> find_terms(std::span<const textnorm::Token> tokens,
                                const Lexicon& lex) {
  std::vector<TermHit> hits;
  if (lex.entries.empty()) return hits;
  std::size_t i = 0;
  while (i < tokens.size()) {
    std::size_t longest = std::min(lex.max_ngram, tokens.size() - i);
    bool matched = false;
    for (std::size_t n = longest; n >= 1; --n) {
      std::string key = joined_norms(tokens, i, n);
      auto it = lex.entries.find(key);
      if (it != lex.entries.end()) {
        hits.push_back(TermHit{key, it->second, i, n});
        i += n;
        matched = true;
        break;
      }
    }
    if (!matched) ++i;
  }
  return hits;
}

bool term_occurs(std::string_view term,
                 std::span<const textnorm::Token> tokens) {
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  while (pos <= term.size()) {
    std::size_t space = term.find(' ', pos);
    if (space == std::string_view::npos) {
      parts.push_back(term.substr(pos));
      break;
    }
    parts.push_back(term.substr(pos, space - pos));
    pos = space + 1;
  }
  if (parts.empty() || parts.size() > tokens.size()) return false;
  for (std::size_t i = 0; i + parts.size() <= tokens.size(); ++i) {
    bool all = true;
    for (std::size_t k = 0; k < parts.size(); ++k) {
      if (tokens[i + k].norm != parts[k]) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

}  // namespace asrward::ontology
