// Copyright 2026 the asr-ward authors
// SPDX-License-Identifier: Apache-2.0

#include "asrward/textnorm.hpp"

#include <array>
#include <cctype>
#include <unordered_map>

namespace asrward::textnorm {

namespace {

bool is_space(char c) {
  return std::isspace(static_cast<unsigned char>(c)) != 0;
}

// UTF-8 sequences treated as punctuation alongside ASCII ispunct.
constexpr std::array<std::string_view, 9> kWidePunct = {
    "‘", "’",  // single quotes
    "“", "”",  // double quotes
    "–", "—",  // en/em dash
    "…",            // ellipsis
    "«", "»",  // guillemets
};

// Stems whose trailing 'e' is restored after suffix stripping.
const std::unordered_map<std::string_view, std::string_view> kRestoreE = {
    {"dos", "dose"},         {"nurs", "nurse"},
    {"puls", "pulse"},       {"pressur", "pressure"},
    {"exercis", "exercise"}, {"diagnos", "diagnose"},
    {"increas", "increase"}, {"decreas", "decrease"},
    {"medicin", "medicine"}, {"migrain", "migraine"},
};

constexpr std::size_t kMinStem = 3;

// One stripping pass; returns true if a rule fired.
bool strip_suffix_once(std::string& w) {
  static constexpr std::array<std::string_view, 5> kSuffixes = {
      "ing", "ed", "es", "ly", "s"};

  for (std::string_view suf : kSuffixes) {
    if (w.size() <= suf.size()) continue;
    if (w.compare(w.size() - suf.size(), suf.size(), suf) != 0) continue;
    std::size_t stem_len = w.size() - suf.size();
    if (stem_len < kMinStem) continue;
    // "ss"/"us" endings keep their s: stress, virus, class.
    if (suf == "s" && w.size() >= 2 &&
        (w[w.size() - 2] == 's' || w[w.size() - 2] == 'u')) {
      continue;
    }
    w.resize(stem_len);
    if (auto it = kRestoreE.find(w); it != kRestoreE.end()) {
      w.assign(it->second);
    }
    return true;
  }
  return false;
}

}  // namespace

bool is_punct_at(std::string_view s, std::size_t pos, std::size_t& len) {
  unsigned char c = static_cast<unsigned char>(s[pos]);
  if (c < 0x80) {
    if (std::ispunct(c)) {
      len = 1;
      return true;
    }
    return false;
  }
  for (std::string_view wp : kWidePunct) {
    if (s.compare(pos, wp.size(), wp) == 0) {
      len = wp.size();
      return true;
    }
  }
  return false;
}

std::string stem(std::string_view word) {
  std::string w(word);
  // Iterate to a fixed point; each pass strips at most one suffix, so this
  // terminates and the result satisfies stem(stem(w)) == stem(w).
  while (strip_suffix_once(w)) {
  }
  return w;
}

std::vector<Token> normalize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  std::size_t word_index = 0;
  const std::size_t n = text.size();
  while (i < n) {
    while (i < n && is_space(text[i])) ++i;
    if (i >= n) break;
    std::size_t start = i;
    while (i < n && !is_space(text[i])) ++i;
    std::string_view word = text.substr(start, i - start);

    std::string norm;
    norm.reserve(word.size());
    std::size_t p = 0;
    while (p < word.size()) {
      std::size_t plen = 0;
      if (is_punct_at(word, p, plen)) {
        p += plen;
        continue;
      }
      unsigned char c = static_cast<unsigned char>(word[p]);
      norm.push_back(c < 0x80 ? static_cast<char>(std::tolower(c))
                              : static_cast<char>(c));
      ++p;
    }
    if (!norm.empty()) {
      out.push_back(Token{std::string(word), stem(norm), word_index});
    }
    ++word_index;
  }
  return out;
}

namespace {

// Lowercased words (including their trailing period) that do not end a
// sentence.
constexpr std::array<std::string_view, 11> kAbbreviations = {
    "dr.", "mr.", "mrs.", "ms.", "st.", "jr.",
    "sr.", "prof.", "vs.", "e.g.", "i.e.",
};

bool is_terminal(char c) { return c == '.' || c == '?' || c == '!'; }

std::string_view trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return s.substr(b, e - b);
}

}  // namespace

std::vector<std::string> sentence_split(std::string_view text) {
  std::vector<std::string> out;
  const std::size_t n = text.size();
  std::size_t start = 0;
  std::size_t i = 0;
  while (i < n) {
    if (!is_terminal(text[i])) {
      ++i;
      continue;
    }
    std::size_t run_end = i;
    while (run_end + 1 < n && is_terminal(text[run_end + 1])) ++run_end;

    if (text[i] == '.' && run_end == i) {
      // The word ending at this period may be a guarded abbreviation.
      std::size_t wb = i;
      while (wb > start && !is_space(text[wb - 1])) --wb;
      std::string word(text.substr(wb, i - wb + 1));
      for (char& c : word) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      bool guarded = false;
      for (std::string_view abbr : kAbbreviations) {
        if (word == abbr) {
          guarded = true;
          break;
        }
      }
      if (guarded) {
        i = run_end + 1;
        continue;
      }
    }

    std::size_t next = run_end + 1;
    while (next < n && is_space(text[next])) ++next;
    // A boundary needs end-of-text, or whitespace followed by a capital.
    bool boundary =
        next >= n ||
        (next > run_end + 1 &&
         std::isupper(static_cast<unsigned char>(text[next])) != 0);
    if (!boundary) {
      i = run_end + 1;
      continue;
    }
    std::string_view sentence = trim(text.substr(start, run_end + 1 - start));
    if (!sentence.empty()) out.emplace_back(sentence);
    start = next;
    i = next;
  }
  std::string_view tail = trim(text.substr(start));
  if (!tail.empty()) out.emplace_back(tail);
  return out;
}

}  // namespace asrward::textnorm
