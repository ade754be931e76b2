// Copyright 2026 the asr-ward authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "asrward/errors.hpp"
#include "asrward/metrics.hpp"
#include "asrward/rng.hpp"
#include "asrward/ontology.hpp"
#include "asrward/textnorm.hpp"
#include "support/oracles.hpp"
#include "support/testutil.hpp"

using namespace asrward;
using namespace asrward::metrics;
using testutil::raw_tokens;

TEST_SUITE_BEGIN("metrics");

TEST_CASE("wer basics") {
  auto abc = raw_tokens({"a", "b", "c"});
  CHECK(wer(abc, abc) == 0.0);
  CHECK(wer(abc, raw_tokens({"a", "x", "c"})) == doctest::Approx(100.0 / 3.0));
  CHECK(wer(raw_tokens({"a"}), raw_tokens({"a", "b", "c"})) ==
        doctest::Approx(200.0));
  CHECK(wer(abc, {}) == doctest::Approx(100.0));
  CHECK_THROWS_AS(wer({}, abc), Error);
}

TEST_CASE("wer agrees with an independent Levenshtein on random pairs") {
  Rng rng(31);
  std::vector<std::string> alphabet = {"a", "b", "c", "d", "e"};
  for (int iter = 0; iter < 500; ++iter) {
    std::vector<std::string> ref, hyp;
    for (std::size_t i = 0, n = 1 + rng.below(20); i < n; ++i)
      ref.push_back(alphabet[rng.below(alphabet.size())]);
    for (std::size_t i = 0, n = rng.below(21); i < n; ++i)
      hyp.push_back(alphabet[rng.below(alphabet.size())]);
    double got = wer(raw_tokens(ref), raw_tokens(hyp));
    double want = 100.0 * static_cast<double>(oracles::levenshtein(ref, hyp)) /
                  static_cast<double>(ref.size());
    CHECK(got == want);
  }
}

TEST_CASE("bleu identity and zero-overlap") {
  auto tokens = raw_tokens({"the", "cat", "sat", "on", "the", "mat"});
  CHECK(bleu(tokens, tokens) == doctest::Approx(100.0));
  CHECK(bleu(tokens, raw_tokens({"dogs", "bark"})) == 0.0);
  CHECK_THROWS_AS(bleu({}, tokens), Error);
  CHECK_THROWS_AS(bleu(tokens, {}), Error);
}

TEST_CASE("bleu hand-computed short hypothesis") {
  // p1 = 1, smoothed p2..p4 = 1, brevity penalty = exp(1 - 3/2).
  auto ref = raw_tokens({"the", "cat", "sat"});
  auto hyp = raw_tokens({"the", "cat"});
  CHECK(bleu(ref, hyp) == doctest::Approx(100.0 * std::exp(-0.5)).epsilon(1e-9));
}

TEST_CASE("bleu clipping caps repeated n-grams") {
  // hyp repeats "the" 4x; ref has it twice: clipped p1 = 2/4.
  auto ref = raw_tokens({"the", "cat", "the", "dog"});
  auto hyp = raw_tokens({"the", "the", "the", "the"});
  BleuStats stats;
  stats.add(ref, hyp);
  CHECK(stats.matched[0] == 2);
  CHECK(stats.total[0] == 4);
}

TEST_CASE("corpus bleu accumulates over segments") {
  auto r1 = raw_tokens({"a", "b", "c"});
  auto h1 = raw_tokens({"a", "b", "c"});
  auto r2 = raw_tokens({"d", "e", "f"});
  auto h2 = raw_tokens({"d", "e", "f"});
  BleuStats s;
  s.add(r1, h1);
  s.add(r2, h2);
  CHECK(s.score() == doctest::Approx(100.0));
}

TEST_CASE("medical_prf on the spec cases") {
  testutil::TempDir dir("prf");
  testutil::write_file(dir.file("lex.tsv"),
                       "coumadin\tChemicalsAndDrugs\n"
                       "heart\tAnatomy\n"
                       "vitamin\tChemicalsAndDrugs\n");
  auto lex = ontology::load_lexicon(dir.file("lex.tsv"));

  SUBCASE("all terms preserved") {
    auto ref = textnorm::normalize("take coumadin for the heart");
    auto hits = ontology::find_terms(ref, lex);
    auto prf = medical_prf(hits, ref, lex);
    CHECK(prf.precision == 1.0);
    CHECK(prf.recall == 1.0);
    CHECK(prf.f1 == 1.0);
  }
  SUBCASE("one lost, one spurious") {
    auto ref = textnorm::normalize("take coumadin for the heart");
    auto hits = ontology::find_terms(ref, lex);
    REQUIRE(hits.size() == 2);
    auto hyp = textnorm::normalize("take common for the heart vitamin");
    auto prf = medical_prf(hits, hyp, lex);
    CHECK(prf.precision == doctest::Approx(0.5));
    CHECK(prf.recall == doctest::Approx(0.5));
    CHECK(prf.f1 == doctest::Approx(0.5));
  }
  SUBCASE("vacuously perfect when neither side has terms") {
    auto ref = textnorm::normalize("nothing to see");
    auto prf = medical_prf({}, ref, lex);
    CHECK(prf.precision == 1.0);
    CHECK(prf.recall == 1.0);
    CHECK(prf.f1 == 1.0);
  }
}

TEST_CASE("classification metrics arithmetic") {
  Confusion c{3, 1, 4, 2};
  auto m = classification_metrics(c);
  CHECK(m.precision == doctest::Approx(0.75));
  CHECK(m.recall == doctest::Approx(0.6));
  CHECK(m.f1 == doctest::Approx(2.0 / 3.0));
  CHECK(m.cer == doctest::Approx(30.0));

  Confusion perfect{5, 0, 5, 0};
  auto mp = classification_metrics(perfect);
  CHECK(mp.precision == 1.0);
  CHECK(mp.recall == 1.0);
  CHECK(mp.f1 == 1.0);
  CHECK(mp.cer == 0.0);

  CHECK_THROWS_AS(classification_metrics(Confusion{}), Error);
}

TEST_CASE("paper table rows: F1 recomputes from printed P/R") {
  struct Row {
    double p, r, f1;
  };
  // Error-detection rows (medical block then all-errors block), plus the
  // simulated-error evaluation rows.
  const Row rows[] = {
      {72.14, 80.54, 76.11}, {75.57, 84.18, 79.63}, {74.00, 88.24, 80.46},
      {70.08, 70.65, 70.36}, {75.51, 70.44, 72.89}, {74.28, 72.29, 73.27},
      {71.99, 91.86, 80.72}, {77.86, 81.01, 79.41},
  };
  for (const auto& row : rows) {
    CAPTURE(row.p);
    CHECK(std::abs(f1_from_pr(row.p, row.r) - row.f1) <= 0.05);
  }
}

TEST_CASE("accuracy plus CER/100 is one, exactly in integer arithmetic") {
  Rng rng(17);
  for (int iter = 0; iter < 100; ++iter) {
    Confusion c{rng.below(50), rng.below(50), rng.below(50), rng.below(50)};
    if (c.total() == 0) c.tp = 1;
    auto m = classification_metrics(c);
    // Exact identity on the integer counts.
    CHECK(c.tp + c.tn + c.fp + c.fn == c.total());
    // And the double forms agree to machine precision.
    double accuracy = static_cast<double>(c.tp + c.tn) /
                      static_cast<double>(c.total());
    CHECK(std::abs(accuracy + m.cer / 100.0 - 1.0) < 1e-12);
    // F1 lies between min and max of P and R when both are nonzero.
    if (m.precision > 0 && m.recall > 0) {
      CHECK(m.f1 >= std::min(m.precision, m.recall) - 1e-12);
      CHECK(m.f1 <= std::max(m.precision, m.recall) + 1e-12);
    }
  }
}

namespace {

dataset::EntailmentExample make_example(const std::string& id,
                                        const std::string& ref_text,
                                        int label,
                                        const ontology::Lexicon& lex) {
  dataset::EntailmentExample e;
  e.id = id;
  e.ref_text = ref_text;
  e.hyp_text = ref_text;
  e.label = label;
  e.medical_label = label;
  e.audio_ref = {"", 0.0, 2.0};
  e.term_hits = ontology::find_terms(textnorm::normalize(ref_text), lex);
  return e;
}

}  // namespace

TEST_CASE("breakdown groups and terms") {
  testutil::TempDir dir("bd");
  testutil::write_file(dir.file("lex.tsv"),
                       "coumadin\tChemicalsAndDrugs\n"
                       "heart\tAnatomy\n"
                       "chest pain\tDisorders\n");
  auto lex = ontology::load_lexicon(dir.file("lex.tsv"));

  SUBCASE("single term everywhere equals overall") {
    std::vector<dataset::EntailmentExample> examples = {
        make_example("c:0", "take coumadin now", 1, lex),
        make_example("c:1", "more coumadin later", 0, lex),
    };
    std::vector<Prediction> preds = {{"c:0", 0.9, 1}, {"c:1", 0.2, 0}};
    auto report = breakdown(preds, examples, lex, dataset::LabelField::All);
    REQUIRE(report.by_term.size() == 1);
    const auto& entry = report.by_term.at("coumadin");
    CHECK(entry.confusion.tp == report.overall.confusion.tp);
    CHECK(entry.confusion.tn == report.overall.confusion.tn);
    CHECK(report.overall.metrics.cer == 0.0);
  }

  SUBCASE("an example with two groups counts toward both") {
    std::vector<dataset::EntailmentExample> examples = {
        make_example("c:0", "chest pain near the heart", 1, lex),
    };
    std::vector<Prediction> preds = {{"c:0", 0.8, 1}};
    auto report = breakdown(preds, examples, lex, dataset::LabelField::All);
    CHECK(report.by_group.count(ontology::SemanticGroup::Disorders) == 1);
    CHECK(report.by_group.count(ontology::SemanticGroup::Anatomy) == 1);
    // No chemicals in sight: group omitted entirely.
    CHECK(report.by_group.count(ontology::SemanticGroup::ChemicalsAndDrugs) == 0);
  }

  SUBCASE("missing prediction is an error") {
    std::vector<dataset::EntailmentExample> examples = {
        make_example("c:0", "take coumadin now", 1, lex)};
    CHECK_THROWS_AS(
        breakdown({}, examples, lex, dataset::LabelField::All), Error);
  }
}

TEST_CASE("per-group confusions cover the term-bearing examples") {
  testutil::TempDir dir("bdsum");
  testutil::write_file(dir.file("lex.tsv"),
                       "coumadin\tChemicalsAndDrugs\n"
                       "heart\tAnatomy\n"
                       "chest pain\tDisorders\n");
  auto lex = ontology::load_lexicon(dir.file("lex.tsv"));
  Rng rng(19);
  const char* texts[] = {"take coumadin now", "chest pain near the heart",
                         "the heart looks fine", "nothing medical here"};
  std::vector<dataset::EntailmentExample> examples;
  std::vector<Prediction> preds;
  for (int i = 0; i < 40; ++i) {
    auto e = make_example("c:" + std::to_string(i), texts[rng.below(4)],
                          static_cast<int>(rng.below(2)), lex);
    preds.push_back({e.id, 0.5, static_cast<int>(rng.below(2))});
    examples.push_back(std::move(e));
  }
  auto report = breakdown(preds, examples, lex, dataset::LabelField::All);

  std::uint64_t group_total = 0;
  for (const auto& [group, entry] : report.by_group)
    group_total += entry.confusion.total();
  std::uint64_t with_terms = 0;
  for (const auto& e : examples)
    if (!e.term_hits.empty()) ++with_terms;
  // Multi-group examples count several times, so the group sum dominates.
  CHECK(group_total >= with_terms);
}

TEST_CASE("render_report is deterministic and json parses back") {
  testutil::TempDir dir("rr");
  testutil::write_file(dir.file("lex.tsv"), "heart\tAnatomy\n");
  auto lex = ontology::load_lexicon(dir.file("lex.tsv"));
  std::vector<dataset::EntailmentExample> examples = {
      make_example("c:0", "the heart looks fine", 0, lex),
      make_example("c:1", "heart rate is high", 1, lex),
  };
  std::vector<Prediction> preds = {{"c:0", 0.1, 0}, {"c:1", 0.7, 1}};
  auto report = breakdown(preds, examples, lex, dataset::LabelField::All);

  auto text1 = render_report(report, ReportFormat::Text);
  auto text2 = render_report(report, ReportFormat::Text);
  CHECK(text1 == text2);
  CHECK(text1.find("overall") != std::string::npos);
  CHECK(text1.find("Anatomy") != std::string::npos);

  auto js = render_report(report, ReportFormat::Json);
  auto parsed = nlohmann::json::parse(js);
  CHECK(parsed.at("counts").at("examples").get<int>() == 2);
  CHECK(parsed.at("overall").at("cer").get<double>() == 0.0);
  CHECK(parsed.at("by_term").contains("heart"));
}

TEST_CASE("empty report renders header only") {
  ErrorReport empty;
  auto text = render_report(empty, ReportFormat::Text);
  CHECK(text.find("overall") != std::string::npos);
  CHECK(text.find("by semantic group") == std::string::npos);
}

TEST_SUITE_END();
