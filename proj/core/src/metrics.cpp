// Copyright 2026 the asr-ward authors
// SPDX-License-Identifier: Apache-2.0

#include "asrward/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <unordered_map>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "asrward/errors.hpp"

namespace asrward::metrics {

using nlohmann::json;

namespace {

// Two-row Levenshtein with unit costs on norms.
std::size_t edit_distance_norms(std::span<const textnorm::Token> ref,
                                std::span<const textnorm::Token> hyp) {
  const std::size_t n = ref.size();
  const std::size_t m = hyp.size();
  std::vector<std::size_t> prev(m + 1), cur(m + 1);
  for (std::size_t j = 0; j <= m; ++j) prev[j] = j;
  for (std::size_t i = 1; i <= n; ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= m; ++j) {
      std::size_t sub = prev[j - 1] + (ref[i - 1].norm == hyp[j - 1].norm ? 0 : 1);
      cur[j] = std::min({sub, prev[j] + 1, cur[j - 1] + 1});
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

}  // namespace

double wer(std::span<const textnorm::Token> ref,
           std::span<const textnorm::Token> hyp) {
  if (ref.empty())
    throw Error(Errc::EmptyReference, "WER needs a non-empty reference");
  return 100.0 * static_cast<double>(edit_distance_norms(ref, hyp)) /
         static_cast<double>(ref.size());
}

void WerStats::add(std::span<const textnorm::Token> ref,
                   std::span<const textnorm::Token> hyp) {
  distance += edit_distance_norms(ref, hyp);
  ref_len += ref.size();
}

WerStats& WerStats::operator+=(const WerStats& other) {
  distance += other.distance;
  ref_len += other.ref_len;
  return *this;
}

double WerStats::percent() const {
  if (ref_len == 0)
    throw Error(Errc::EmptyReference, "WER needs a non-empty reference");
  return 100.0 * static_cast<double>(distance) / static_cast<double>(ref_len);
}

namespace {

// n-gram counts keyed by joined norms; order index 0..3.
std::unordered_map<std::string, std::uint64_t> ngram_counts(
    std::span<const textnorm::Token> tokens, std::size_t order) {
  std::unordered_map<std::string, std::uint64_t> counts;
  if (tokens.size() < order) return counts;
  for (std::size_t i = 0; i + order <= tokens.size(); ++i) {
    std::string key;
    for (std::size_t k = 0; k < order; ++k) {
      if (k > 0) key.push_back('\x1f');
      key += tokens[i + k].norm;
    }
    ++counts[key];
  }
  return counts;
}

}  // namespace

void BleuStats::add(std::span<const textnorm::Token> ref,
                    std::span<const textnorm::Token> hyp) {
  if (ref.empty() || hyp.empty())
    throw Error(Errc::EmptyInput, "BLEU needs non-empty reference and hypothesis");
  ref_len += ref.size();
  hyp_len += hyp.size();
  for (std::size_t order = 1; order <= 4; ++order) {
    auto ref_counts = ngram_counts(ref, order);
    auto hyp_counts = ngram_counts(hyp, order);
    for (const auto& [gram, count] : hyp_counts) {
      total[order - 1] += count;
      auto it = ref_counts.find(gram);
      if (it != ref_counts.end())
        matched[order - 1] += std::min(count, it->second);
    }
  }
}

BleuStats& BleuStats::operator+=(const BleuStats& other) {
  for (std::size_t k = 0; k < 4; ++k) {
    matched[k] += other.matched[k];
    total[k] += other.total[k];
  }
  ref_len += other.ref_len;
  hyp_len += other.hyp_len;
  return *this;
}

double BleuStats::score() const {
  if (hyp_len == 0 || ref_len == 0) return 0.0;
  // Unigram precision is unsmoothed: zero overlap means zero BLEU.
  if (matched[0] == 0) return 0.0;
  double log_precision = 0.0;
  for (std::size_t k = 0; k < 4; ++k) {
    double smooth = k == 0 ? 0.0 : 1.0;
    double p = (static_cast<double>(matched[k]) + smooth) /
               (static_cast<double>(total[k]) + smooth);
    log_precision += 0.25 * std::log(p);
  }
  double bp = 1.0;
  if (hyp_len < ref_len)
    bp = std::exp(1.0 - static_cast<double>(ref_len) / static_cast<double>(hyp_len));
  return 100.0 * bp * std::exp(log_precision);
}

double bleu(std::span<const textnorm::Token> ref,
            std::span<const textnorm::Token> hyp) {
  BleuStats stats;
  stats.add(ref, hyp);
  return stats.score();
}

void MedicalPrfStats::add(const std::vector<ontology::TermHit>& ref_hits,
                          std::span<const textnorm::Token> hyp_tokens,
                          const ontology::Lexicon& lex) {
  std::unordered_set<std::string> recovered_terms;
  for (const auto& hit : ref_hits) {
    ++ref_total;
    if (ontology::term_occurs(hit.term, hyp_tokens)) {
      ++recovered;
      recovered_terms.insert(hit.term);
    }
  }
  auto hyp_hits = ontology::find_terms(hyp_tokens, lex);
  for (const auto& hit : hyp_hits) {
    ++hyp_total;
    if (recovered_terms.count(hit.term)) ++hyp_recovered;
  }
}

PrF MedicalPrfStats::finalize() const {
  PrF out;
  out.precision = hyp_total == 0
                      ? 1.0
                      : static_cast<double>(hyp_recovered) /
                            static_cast<double>(hyp_total);
  out.recall = ref_total == 0 ? 1.0
                              : static_cast<double>(recovered) /
                                    static_cast<double>(ref_total);
  out.f1 = f1_from_pr(out.precision, out.recall);
  return out;
}

PrF medical_prf(const std::vector<ontology::TermHit>& ref_hits,
                std::span<const textnorm::Token> hyp_tokens,
                const ontology::Lexicon& lex) {
  MedicalPrfStats stats;
  stats.add(ref_hits, hyp_tokens, lex);
  return stats.finalize();
}

void Confusion::add(int truth, int predicted) {
  if (truth == 1)
    predicted == 1 ? ++tp : ++fn;
  else
    predicted == 1 ? ++fp : ++tn;
}

double f1_from_pr(double p, double r) {
  return p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0;
}

ClassMetrics classification_metrics(const Confusion& c) {
  if (c.total() == 0)
    throw Error(Errc::EmptyConfusion, "confusion matrix is empty");
  ClassMetrics m;
  m.precision = c.tp + c.fp > 0
                    ? static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp)
                    : 0.0;
  m.recall = c.tp + c.fn > 0
                 ? static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn)
                 : 0.0;
  m.f1 = f1_from_pr(m.precision, m.recall);
  m.cer = 100.0 * static_cast<double>(c.fp + c.fn) /
          static_cast<double>(c.total());
  return m;
}

ErrorReport breakdown(std::span<const Prediction> preds,
                      std::span<const dataset::EntailmentExample> examples,
                      const ontology::Lexicon& lex,
                      dataset::LabelField target) {
  std::unordered_map<std::string, const Prediction*> by_id;
  for (const auto& p : preds) by_id[p.id] = &p;

  ErrorReport report;
  std::map<ontology::SemanticGroup, Confusion> group_conf;
  std::map<std::string, Confusion> term_conf;
  std::map<ontology::SemanticGroup, std::uint64_t> group_n;
  std::map<std::string, std::uint64_t> term_n;

  for (const auto& e : examples) {
    auto it = by_id.find(e.id);
    if (it == by_id.end())
      throw Error(Errc::MissingPrediction, "no prediction for " + e.id);
    int truth = dataset::example_label(e, target);
    int predicted = it->second->predicted;

    report.overall.confusion.add(truth, predicted);
    ++report.examples;
    truth == 1 ? ++report.positives : ++report.negatives;

    // Manifests usually carry term hits; fall back to a fresh scan of the
    // reference text when they are absent.
    std::vector<ontology::TermHit> recomputed;
    const std::vector<ontology::TermHit>* hits = &e.term_hits;
    if (hits->empty() && !lex.entries.empty()) {
      auto tokens = textnorm::normalize(e.ref_text);
      recomputed = ontology::find_terms(tokens, lex);
      hits = &recomputed;
    }

    // Term hits may repeat a term/group within one example; each example
    // counts once per distinct group and term.
    std::unordered_set<int> groups_seen;
    std::unordered_set<std::string> terms_seen;
    for (const auto& hit : *hits) {
      if (groups_seen.insert(static_cast<int>(hit.group)).second) {
        group_conf[hit.group].add(truth, predicted);
        ++group_n[hit.group];
      }
      if (terms_seen.insert(hit.term).second) {
        term_conf[hit.term].add(truth, predicted);
        ++term_n[hit.term];
      }
    }
  }

  report.overall.examples = report.examples;
  report.overall.metrics = report.examples > 0
                               ? classification_metrics(report.overall.confusion)
                               : ClassMetrics{};
  for (const auto& [group, conf] : group_conf) {
    ReportEntry entry;
    entry.confusion = conf;
    entry.examples = group_n[group];
    entry.metrics = classification_metrics(conf);
    report.by_group.emplace(group, entry);
  }
  for (const auto& [term, conf] : term_conf) {
    ReportEntry entry;
    entry.confusion = conf;
    entry.examples = term_n[term];
    entry.metrics = classification_metrics(conf);
    report.by_term.emplace(term, entry);
  }
  return report;
}

namespace {

json entry_to_json(const ReportEntry& e) {
  return json{{"precision", e.metrics.precision},
              {"recall", e.metrics.recall},
              {"f1", e.metrics.f1},
              {"cer", e.metrics.cer},
              {"examples", e.examples},
              {"confusion",
               {{"tp", e.confusion.tp},
                {"fp", e.confusion.fp},
                {"tn", e.confusion.tn},
                {"fn", e.confusion.fn}}}};
}

void append_text_row(std::string& out, const std::string& name,
                     const ReportEntry& e) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-24s %9.2f %9.2f %9.2f %8.1f %8llu\n",
                name.c_str(), 100.0 * e.metrics.precision,
                100.0 * e.metrics.recall, 100.0 * e.metrics.f1, e.metrics.cer,
                static_cast<unsigned long long>(e.examples));
  out += buf;
}

}  // namespace

std::string render_report(const ErrorReport& report, ReportFormat format) {
  if (format == ReportFormat::Json) {
    json j;
    j["overall"] = entry_to_json(report.overall);
    json groups = json::object();
    for (const auto& [group, entry] : report.by_group)
      groups[ontology::to_string(group)] = entry_to_json(entry);
    j["by_group"] = groups;
    json terms = json::object();
    for (const auto& [term, entry] : report.by_term)
      terms[term] = entry_to_json(entry);
    j["by_term"] = terms;
    j["counts"] = json{{"examples", report.examples},
                       {"positives", report.positives},
                       {"negatives", report.negatives}};
    return j.dump(2) + "\n";
  }

  std::string out;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-24s %9s %9s %9s %8s %8s\n", "", "P", "R",
                "F1", "CER", "N");
  out += buf;
  append_text_row(out, "overall", report.overall);
  if (!report.by_group.empty()) {
    out += "\nby semantic group\n";
    for (const auto& [group, entry] : report.by_group)
      append_text_row(out, ontology::to_string(group), entry);
  }
  if (!report.by_term.empty()) {
    out += "\nby term (most frequent first)\n";
    std::vector<std::pair<std::string, const ReportEntry*>> terms;
    terms.reserve(report.by_term.size());
    for (const auto& [term, entry] : report.by_term)
      terms.emplace_back(term, &entry);
    std::stable_sort(terms.begin(), terms.end(),
                     [](const auto& a, const auto& b) {
                       if (a.second->examples != b.second->examples)
                         return a.second->examples > b.second->examples;
                       return a.first < b.first;
                     });
    for (const auto& [term, entry] : terms) append_text_row(out, term, *entry);
  }
  return out;
}

}  // namespace asrward::metrics
