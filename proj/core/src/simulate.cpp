// Copyright 2026 the asr-ward authors
// SPDX-License-Identifier: Apache-2.0

#include "asrward/simulate.hpp"

#include <algorithm>
#include <cctype>

#include "asrward/errors.hpp"
#include "asrward/rng.hpp"
#include "asrward/textnorm.hpp"

namespace asrward::simulate {

namespace {

char soundex_class(char c) {
  switch (c) {
    case 'b': case 'f': case 'p': case 'v': return '1';
    case 'c': case 'g': case 'j': case 'k':
    case 'q': case 's': case 'x': case 'z': return '2';
    case 'd': case 't': return '3';
    case 'l': return '4';
    case 'm': case 'n': return '5';
    case 'r': return '6';
    default: return '0';  // vowels, h, w, y, non-letters
  }
}

}  // namespace

std::string phonetic_key(std::string_view word) {
  if (word.empty()) return "0000";
  std::string key;
  key.push_back(static_cast<char>(
      std::tolower(static_cast<unsigned char>(word[0]))));
  char prev = soundex_class(key[0]);
  for (std::size_t i = 1; i < word.size() && key.size() < 4; ++i) {
    char c = static_cast<char>(
        std::tolower(static_cast<unsigned char>(word[i])));
    char cls = soundex_class(c);
    if (cls != '0' && cls != prev) key.push_back(cls);
    prev = cls;
  }
  while (key.size() < 4) key.push_back('0');
  return key;
}

std::size_t edit_distance(std::string_view a, std::string_view b) {
  const std::size_t n = a.size(), m = b.size();
  std::vector<std::size_t> prev(m + 1), cur(m + 1);
  for (std::size_t j = 0; j <= m; ++j) prev[j] = j;
  for (std::size_t i = 1; i <= n; ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= m; ++j) {
      std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({sub, prev[j] + 1, cur[j - 1] + 1});
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

ConfusionModel build_confusion(std::vector<std::string> vocab,
                               std::size_t max_edit, std::uint64_t seed) {
  if (vocab.empty())
    throw Error(Errc::EmptyInput, "confusion vocabulary is empty");
  if (max_edit < 1) throw Error(Errc::Range, "max_edit must be >= 1");

  std::sort(vocab.begin(), vocab.end());
  vocab.erase(std::unique(vocab.begin(), vocab.end()), vocab.end());

  ConfusionModel cm;
  cm.max_edit = max_edit;
  cm.seed = seed;

  std::unordered_map<std::string, std::vector<std::size_t>> by_key;
  std::vector<std::string> keys(vocab.size());
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    keys[i] = phonetic_key(vocab[i]);
    by_key[keys[i]].push_back(i);
  }

  for (std::size_t i = 0; i < vocab.size(); ++i) {
    std::vector<std::string> cands;
    for (std::size_t j : by_key[keys[i]]) {
      if (j != i) cands.push_back(vocab[j]);
    }
    for (std::size_t j = 0; j < vocab.size(); ++j) {
      if (j == i) continue;
      // Cheap length bound before the full distance.
      std::size_t la = vocab[i].size(), lb = vocab[j].size();
      if ((la > lb ? la - lb : lb - la) > max_edit) continue;
      if (edit_distance(vocab[i], vocab[j]) <= max_edit)
        cands.push_back(vocab[j]);
    }
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    cm.candidates.emplace(vocab[i], std::move(cands));
  }
  cm.vocab = std::move(vocab);
  return cm;
}

std::vector<dataset::EntailmentExample> simulate_errors(
    std::span<const dataset::EntailmentExample> test, const ConfusionModel& cm,
    const align::AlignParams& params, SimulateStats* stats) {
  std::vector<dataset::EntailmentExample> out;
  out.reserve(test.size());

  for (std::size_t idx = 0; idx < test.size(); ++idx) {
    const auto& ex = test[idx];
    out.push_back(ex);
    if (ex.label != 1) continue;

    auto ref_tokens = textnorm::normalize(ex.ref_text);
    auto hyp_tokens = textnorm::normalize(ex.hyp_text);
    if (hyp_tokens.empty()) continue;  // nothing to resample

    auto sw = align::smith_waterman(ref_tokens, hyp_tokens, params);

    // Whitespace words of the hypothesis; token source_index points here.
    std::vector<std::string> words;
    {
      std::size_t i = 0;
      const std::string& t = ex.hyp_text;
      while (i < t.size()) {
        while (i < t.size() &&
               std::isspace(static_cast<unsigned char>(t[i])))
          ++i;
        if (i >= t.size()) break;
        std::size_t start = i;
        while (i < t.size() &&
               !std::isspace(static_cast<unsigned char>(t[i])))
          ++i;
        words.push_back(t.substr(start, i - start));
      }
    }

    bool changed = false;
    for (const auto& op : sw.trace) {
      if (op.kind != align::EditKind::Substitute) continue;
      const auto& hyp_tok = hyp_tokens[*op.hyp_index];
      const auto& ref_tok = ref_tokens[*op.ref_index];
      auto cand_it = cm.candidates.find(hyp_tok.norm);
      std::vector<std::string> usable;
      if (cand_it != cm.candidates.end()) {
        for (const auto& c : cand_it->second) {
          if (c != hyp_tok.norm && c != ref_tok.norm) usable.push_back(c);
        }
      }
      if (usable.empty()) {
        if (stats) ++stats->skipped;
        continue;
      }
      // Per-site generator: seed x example index x word position, so edits
      // are independent and the whole pass is order-free.
      Rng rng(hash_combine(cm.seed,
                           hash_combine(idx, *op.hyp_index)));
      const std::string& pick =
          usable[static_cast<std::size_t>(rng.below(usable.size()))];
      if (hyp_tok.source_index < words.size()) {
        words[hyp_tok.source_index] = pick;
        changed = true;
        if (stats) ++stats->replaced;
      }
    }

    if (changed) {
      std::string rebuilt;
      for (std::size_t w = 0; w < words.size(); ++w) {
        if (w > 0) rebuilt.push_back(' ');
        rebuilt += words[w];
      }
      out.back().hyp_text = std::move(rebuilt);
    }
  }
  return out;
}

}  // namespace asrward::simulate
