// Copyright 2026 the asr-ward authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <set>
#include <string>
#include <vector>

#include "asrward/errors.hpp"
#include "asrward/ontology.hpp"
#include "asrward/textnorm.hpp"
#include "support/testutil.hpp"

using namespace asrward;
using namespace asrward::ontology;

TEST_SUITE_BEGIN("ontology");

TEST_CASE("load_lexicon normalizes terms through the standard rules") {
  testutil::TempDir dir("lex");
  testutil::write_file(dir.file("lex.tsv"),
                       "Atrial Fibrillation\tDisorders\n"
                       "Blood Pressure\tPhysiology\n"
                       "Coumadin\tChemicalsAndDrugs\n");
  auto lex = load_lexicon(dir.file("lex.tsv"));
  REQUIRE(lex.entries.size() == 3);
  // The fixed suffix rules leave "fibrillation" alone (no -ation rule).
  CHECK(lex.entries.count("atrial fibrillation") == 1);
  CHECK(lex.entries.at("atrial fibrillation") == SemanticGroup::Disorders);
  CHECK(lex.entries.count("blood pressure") == 1);
  CHECK(lex.max_ngram == 2);
  CHECK(lex.warnings.empty());
}

TEST_CASE("empty lexicon file") {
  testutil::TempDir dir("lex");
  testutil::write_file(dir.file("empty.tsv"), "");
  auto lex = load_lexicon(dir.file("empty.tsv"));
  CHECK(lex.entries.empty());
  CHECK(lex.max_ngram == 1);
}

TEST_CASE("malformed row raises FormatError") {
  testutil::TempDir dir("lex");
  testutil::write_file(dir.file("bad.tsv"), "a\tb\tc\n");
  CHECK_THROWS_AS(load_lexicon(dir.file("bad.tsv")), Error);
  testutil::write_file(dir.file("bad2.tsv"), "no-tab-here\n");
  CHECK_THROWS_AS(load_lexicon(dir.file("bad2.tsv")), Error);
  CHECK_THROWS_AS(load_lexicon(dir.file("does_not_exist.tsv")), Error);
}

TEST_CASE("comments are skipped, unknown group and duplicates warn") {
  testutil::TempDir dir("lex");
  testutil::write_file(dir.file("lex.tsv"),
                       "# comment line\n"
                       "aspirin\tChemicalsAndDrugs\n"
                       "aspirin\tDisorders\n"
                       "mystery\tNotAGroup\n"
                       "\n"
                       "heart\tanatomy\n");
  auto lex = load_lexicon(dir.file("lex.tsv"));
  CHECK(lex.entries.size() == 3);
  CHECK(lex.entries.at("aspirin") == SemanticGroup::ChemicalsAndDrugs);
  CHECK(lex.entries.at("mystery") == SemanticGroup::Other);
  CHECK(lex.entries.at("heart") == SemanticGroup::Anatomy);  // case-insensitive
  CHECK(lex.warnings.size() == 2);
}

TEST_CASE("find_terms prefers the longest match") {
  testutil::TempDir dir("lex");
  testutil::write_file(dir.file("lex.tsv"),
                       "blood pressure\tPhysiology\n"
                       "blood\tAnatomy\n");
  auto lex = load_lexicon(dir.file("lex.tsv"));
  auto tokens = textnorm::normalize("blood pressure is fine");
  auto hits = find_terms(tokens, lex);
  REQUIRE(hits.size() == 1);
  CHECK(hits[0].term == "blood pressure");
  CHECK(hits[0].group == SemanticGroup::Physiology);
  CHECK(hits[0].start == 0);
  CHECK(hits[0].len == 2);
}

TEST_CASE("find_terms locates single terms") {
  testutil::TempDir dir("lex");
  testutil::write_file(dir.file("lex.tsv"), "coumadin\tChemicalsAndDrugs\n");
  auto lex = load_lexicon(dir.file("lex.tsv"));
  auto tokens = textnorm::normalize("take coumadin daily");
  auto hits = find_terms(tokens, lex);
  REQUIRE(hits.size() == 1);
  CHECK(hits[0].start == 1);
  CHECK(hits[0].len == 1);

  CHECK(find_terms(textnorm::normalize("nothing matches here"), lex).empty());
  CHECK(find_terms({}, lex).empty());
}

TEST_CASE("hits are non-overlapping, sorted, and suffix-stable") {
  testutil::TempDir dir("lex");
  testutil::write_file(dir.file("lex.tsv"), testutil::kFixtureLexicon);
  auto lex = load_lexicon(dir.file("lex.tsv"));

  auto tokens = textnorm::normalize(
      "the heart and blood pressure and coumadin with atrial fibrillation");
  auto hits = find_terms(tokens, lex);
  REQUIRE(hits.size() == 4);
  std::size_t prev_end = 0;
  for (const auto& h : hits) {
    CHECK(h.start >= prev_end);
    prev_end = h.start + h.len;
    CHECK(prev_end <= tokens.size());
    CHECK(lex.entries.count(h.term) == 1);
  }

  // Appending non-matching tokens after the last hit changes nothing.
  auto extended = textnorm::normalize(
      "the heart and blood pressure and coumadin with atrial fibrillation "
      "again today well");
  CHECK(find_terms(extended, lex) == hits);
}

TEST_CASE("stemming makes inflected mentions match") {
  testutil::TempDir dir("lex");
  testutil::write_file(dir.file("lex.tsv"), "vitamin\tChemicalsAndDrugs\n");
  auto lex = load_lexicon(dir.file("lex.tsv"));
  auto hits = find_terms(textnorm::normalize("taking vitamins today"), lex);
  REQUIRE(hits.size() == 1);
  CHECK(hits[0].term == "vitamin");
}

TEST_CASE("term_occurs finds contiguous occurrences only") {
  auto tokens = textnorm::normalize("check blood pressure now");
  CHECK(term_occurs("blood pressure", tokens));
  CHECK(term_occurs("now", tokens));
  CHECK_FALSE(term_occurs("pressure blood", tokens));
  CHECK_FALSE(term_occurs("blood now", tokens));
  CHECK_FALSE(term_occurs("blood pressure", {}));
}

#ifdef ASRWARD_DATA_DIR
TEST_CASE("the shipped lexicon loads cleanly and covers the core terms") {
  auto lex = load_lexicon(std::string(ASRWARD_DATA_DIR) +
                          "/medical_lexicon.tsv");
  CHECK(lex.entries.size() > 150);
  for (const auto& w : lex.warnings) CAPTURE(w);
  CHECK(lex.warnings.empty());
  // Terms the evaluation breakdowns report on.
  for (const char* term :
       {"heart", "blood pressure", "coumadin", "cholesterol",
        "atrial fibrillation", "chest pain", "stress", "angiogram", "a1c",
        "vitamin", "symbicort", "flu", "echocardiogram"}) {
    CAPTURE(term);
    CHECK(lex.entries.count(term) == 1);
  }
  // All five major groups are populated.
  std::set<SemanticGroup> groups;
  for (const auto& [term, group] : lex.entries) groups.insert(group);
  for (SemanticGroup g :
       {SemanticGroup::ChemicalsAndDrugs, SemanticGroup::Disorders,
        SemanticGroup::Procedures, SemanticGroup::Anatomy,
        SemanticGroup::Physiology}) {
    CHECK(groups.count(g) == 1);
  }
}
#endif

TEST_CASE("lexicon hash is stable and content-sensitive") {
  testutil::TempDir dir("lex");
  testutil::write_file(dir.file("a.tsv"), "heart\tAnatomy\nflu\tDisorders\n");
  // Same content, different row order: same hash.
  testutil::write_file(dir.file("b.tsv"), "flu\tDisorders\nheart\tAnatomy\n");
  testutil::write_file(dir.file("c.tsv"), "heart\tAnatomy\n");
  auto ha = load_lexicon(dir.file("a.tsv")).hash();
  auto hb = load_lexicon(dir.file("b.tsv")).hash();
  auto hc = load_lexicon(dir.file("c.tsv")).hash();
  CHECK(ha == hb);
  CHECK(ha != hc);
  CHECK(ha.size() == 16);
}

TEST_SUITE_END();
