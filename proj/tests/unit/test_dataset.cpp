// Copyright 2026 the asr-ward authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "asrward/alignment.hpp"
#include "asrward/dataset.hpp"
#include "asrward/errors.hpp"
#include "asrward/ontology.hpp"
#include "asrward/rng.hpp"
#include "asrward/textnorm.hpp"
#include "support/testutil.hpp"

using namespace asrward;
using namespace asrward::dataset;

namespace {

ontology::Lexicon fixture_lexicon(const testutil::TempDir& dir) {
  testutil::write_file(dir.file("lex.tsv"), testutil::kFixtureLexicon);
  return ontology::load_lexicon(dir.file("lex.tsv"));
}

// Builds the aligned pair for one ref/hyp sentence pair.
align::AlignedPair pair_of(const std::string& ref, const std::string& hyp) {
  auto ref_tokens = textnorm::normalize(ref);
  auto hyp_tokens = textnorm::normalize(hyp);
  std::vector<textnorm::Segment> ref_segs(1), hyp_segs;
  ref_segs[0].tokens = ref_tokens;
  ref_segs[0].start_s = 0.0;
  ref_segs[0].end_s = 2.0;
  if (!hyp_tokens.empty()) {
    hyp_segs.resize(1);
    hyp_segs[0].tokens = hyp_tokens;
    hyp_segs[0].start_s = 0.0;
    hyp_segs[0].end_s = 2.0;
  }
  auto pairs = align::align_transcripts(ref_tokens, hyp_tokens, ref_segs,
                                        hyp_segs, align::AlignParams{});
  REQUIRE(pairs.size() == 1);
  return pairs[0];
}

EntailmentExample quick_example(const std::string& conv, int ordinal,
                                int label, double dur = 2.0) {
  EntailmentExample e;
  e.id = conv + ":" + std::to_string(ordinal);
  e.audio_ref = {"", 0.0, dur};
  e.label = label;
  e.medical_label = label;
  e.ref_text = "ref text";
  e.hyp_text = label == 1 ? "hyp text" : "ref text";
  return e;
}

}  // namespace

TEST_SUITE_BEGIN("dataset");

TEST_CASE("label_pair on identical segments") {
  testutil::TempDir dir("lbl");
  auto lex = fixture_lexicon(dir);
  auto pair = pair_of("Take the coumadin today.", "Take the coumadin today.");
  auto [label, medical] = label_pair(pair, lex);
  CHECK(label == 0);
  CHECK(medical == 0);
}

TEST_CASE("label_pair flags the symbicort mistranscription as medical") {
  testutil::TempDir dir("lbl");
  auto lex = fixture_lexicon(dir);
  auto pair = pair_of("Keep her on the symbicort for a while.",
                      "Keep her on the civil court for a while.");
  auto [label, medical] = label_pair(pair, lex);
  CHECK(label == 1);
  CHECK(medical == 1);
}

TEST_CASE("label_pair flags plain errors as non-medical") {
  testutil::TempDir dir("lbl");
  auto lex = fixture_lexicon(dir);
  auto pair = pair_of("Probably you won't give a timetable.",
                      "Probably you want to give a timetable.");
  auto [label, medical] = label_pair(pair, lex);
  CHECK(label == 1);
  CHECK(medical == 0);
}

TEST_CASE("label equals normalized inequality on random fixture pairs") {
  testutil::TempDir dir("lbl");
  auto lex = fixture_lexicon(dir);
  Rng rng(83);
  std::vector<std::string> words = {"take", "the",  "now",  "well",
                                    "heart", "rest", "water", "good"};
  for (int iter = 0; iter < 100; ++iter) {
    std::vector<std::string> ref_words, hyp_words;
    for (std::size_t i = 0, n = 2 + rng.below(6); i < n; ++i)
      ref_words.push_back(words[rng.below(words.size())]);
    hyp_words = ref_words;
    if (rng.below(2) == 1 && !hyp_words.empty())
      hyp_words[rng.below(hyp_words.size())] = words[rng.below(words.size())];
    std::string ref, hyp;
    for (const auto& w : ref_words) ref += w + " ";
    for (const auto& w : hyp_words) hyp += w + " ";
    auto pair = pair_of(ref, hyp);
    auto [label, medical] = label_pair(pair, lex);
    bool differs = testutil::norms_of(pair.ref_segment.tokens) !=
                   testutil::norms_of(pair.hyp_segment.tokens);
    CAPTURE(ref);
    CAPTURE(hyp);
    CHECK(label == (differs ? 1 : 0));
    if (medical == 1) CHECK(label == 1);
  }
}

TEST_CASE("filter_duration keeps the closed interval") {
  std::vector<EntailmentExample> examples = {
      quick_example("c", 0, 0, 0.5),
      quick_example("c", 1, 0, 1.0),
      quick_example("c", 2, 0, 12.3),
      quick_example("c", 3, 0, 30.0),
      quick_example("c", 4, 0, 30.5),
  };
  auto kept = filter_duration(std::move(examples), 1.0, 30.0);
  REQUIRE(kept.size() == 3);
  CHECK(kept[0].id == "c:1");
  CHECK(kept[1].id == "c:2");
  CHECK(kept[2].id == "c:3");
}

TEST_CASE("balance downsamples the majority deterministically") {
  std::vector<EntailmentExample> examples;
  for (int i = 0; i < 10; ++i) examples.push_back(quick_example("c", i, 1));
  for (int i = 10; i < 14; ++i) examples.push_back(quick_example("c", i, 0));

  auto once = balance(examples, LabelField::All, 7);
  auto twice = balance(examples, LabelField::All, 7);
  REQUIRE(once.size() == 8);
  std::size_t pos = 0, neg = 0;
  for (const auto& e : once) (e.label == 1 ? pos : neg)++;
  CHECK(pos == 4);
  CHECK(neg == 4);

  auto ids_of = [](const std::vector<EntailmentExample>& v) {
    std::set<std::string> ids;
    for (const auto& e : v) ids.insert(e.id);
    return ids;
  };
  CHECK(ids_of(once) == ids_of(twice));

  // A different seed picks a different positive subset (frozen observation).
  auto other = balance(examples, LabelField::All, 8);
  CHECK(ids_of(once) != ids_of(other));
}

TEST_CASE("balance keeps already balanced data intact") {
  std::vector<EntailmentExample> examples;
  for (int i = 0; i < 5; ++i) examples.push_back(quick_example("c", i, 1));
  for (int i = 5; i < 10; ++i) examples.push_back(quick_example("c", i, 0));
  auto balanced = balance(examples, LabelField::All, 1);
  CHECK(balanced.size() == 10);
}

TEST_CASE("balance with an empty class throws") {
  std::vector<EntailmentExample> examples;
  for (int i = 0; i < 3; ++i) examples.push_back(quick_example("c", i, 1));
  CHECK_THROWS_AS(balance(examples, LabelField::All, 1), Error);
}

TEST_CASE("balance output is a subset of its input") {
  Rng rng(89);
  std::vector<EntailmentExample> examples;
  for (int i = 0; i < 40; ++i)
    examples.push_back(quick_example("c", i, static_cast<int>(rng.below(2))));
  std::size_t pos = 0;
  for (const auto& e : examples) pos += e.label;
  if (pos == 0 || pos == examples.size()) return;  // degenerate draw
  auto balanced = balance(examples, LabelField::All, 3);
  std::set<std::string> input_ids;
  for (const auto& e : examples) input_ids.insert(e.id);
  for (const auto& e : balanced) CHECK(input_ids.count(e.id) == 1);
  std::size_t bpos = 0, bneg = 0;
  for (const auto& e : balanced) (e.label == 1 ? bpos : bneg)++;
  CHECK(bpos == bneg);
}

TEST_CASE("split_dataset 80/10/10 on singleton conversations") {
  std::vector<EntailmentExample> examples;
  for (int i = 0; i < 100; ++i)
    examples.push_back(quick_example("conv" + std::to_string(i), 0, i % 2));
  auto splits = split_dataset(examples, 42);
  CHECK(splits.train.size() == 80);
  CHECK(splits.val.size() == 10);
  CHECK(splits.test.size() == 10);
}

TEST_CASE("split_dataset remainder goes to train first") {
  std::vector<EntailmentExample> examples;
  for (int i = 0; i < 10; ++i)
    examples.push_back(quick_example("conv" + std::to_string(i), 0, i % 2));
  auto splits = split_dataset(examples, 42);
  CHECK(splits.train.size() == 8);
  CHECK(splits.val.size() == 1);
  CHECK(splits.test.size() == 1);

  CHECK_THROWS_AS(split_dataset({}, 1), Error);
  std::vector<EntailmentExample> nine(examples.begin(), examples.begin() + 9);
  CHECK_THROWS_AS(split_dataset(nine, 1), Error);
}

TEST_CASE("split_dataset is deterministic and keeps conversations whole") {
  std::vector<EntailmentExample> examples;
  for (int c = 0; c < 12; ++c)
    for (int u = 0; u < 5; ++u)
      examples.push_back(quick_example("conv" + std::to_string(c), u, u % 2));

  auto a = split_dataset(examples, 9);
  auto b = split_dataset(examples, 9);
  auto ids = [](const std::vector<EntailmentExample>& v) {
    std::vector<std::string> out;
    for (const auto& e : v) out.push_back(e.id);
    return out;
  };
  CHECK(ids(a.train) == ids(b.train));
  CHECK(ids(a.val) == ids(b.val));
  CHECK(ids(a.test) == ids(b.test));

  auto convs = [](const std::vector<EntailmentExample>& v) {
    std::set<std::string> out;
    for (const auto& e : v) out.insert(e.conversation());
    return out;
  };
  auto train_convs = convs(a.train);
  auto val_convs = convs(a.val);
  auto test_convs = convs(a.test);
  for (const auto& c : val_convs) CHECK(train_convs.count(c) == 0);
  for (const auto& c : test_convs) {
    CHECK(train_convs.count(c) == 0);
    CHECK(val_convs.count(c) == 0);
  }
  // Union is the input.
  CHECK(a.train.size() + a.val.size() + a.test.size() == examples.size());
}

TEST_CASE("manifest write/read round-trip") {
  testutil::TempDir dir("mf");
  auto lex = fixture_lexicon(dir);

  DatasetManifest manifest;
  manifest.split = "train";
  manifest.seed = 77;
  manifest.lexicon_hash = lex.hash();
  for (int i = 0; i < 6; ++i) {
    auto e = quick_example("conv" + std::to_string(i % 2), i, i % 2);
    e.ref_text = "take the coumadin today";
    e.hyp_text = i % 2 ? "take the common today" : e.ref_text;
    e.term_hits = ontology::find_terms(textnorm::normalize(e.ref_text), lex);
    e.audio_ref.path = "/tmp/a.wav";
    manifest.examples.push_back(std::move(e));
  }
  write_manifest(manifest, dir.file("m.jsonl"));
  auto back = read_manifest(dir.file("m.jsonl"));
  CHECK(back.split == manifest.split);
  CHECK(back.seed == manifest.seed);
  CHECK(back.lexicon_hash == manifest.lexicon_hash);
  REQUIRE(back.examples.size() == manifest.examples.size());
  CHECK(back.examples == manifest.examples);

  // Writing the read-back manifest reproduces the bytes.
  write_manifest(back, dir.file("m2.jsonl"));
  CHECK(testutil::read_file(dir.file("m.jsonl")) ==
        testutil::read_file(dir.file("m2.jsonl")));
}

TEST_CASE("manifest schema errors and unknown fields") {
  testutil::TempDir dir("mf");
  testutil::write_file(dir.file("empty.jsonl"), "");
  CHECK_THROWS_AS(read_manifest(dir.file("empty.jsonl")), Error);

  testutil::write_file(dir.file("nohdr.jsonl"), "{\"id\":\"x\"}\n");
  CHECK_THROWS_AS(read_manifest(dir.file("nohdr.jsonl")), Error);

  // Missing a required example field.
  testutil::write_file(
      dir.file("missing.jsonl"),
      "{\"split\":\"test\",\"seed\":1,\"lexicon_hash\":\"x\"}\n"
      "{\"id\":\"c:0\",\"hyp_text\":\"a\",\"label\":0,\"ref_text\":\"a\"}\n");
  CHECK_THROWS_AS(read_manifest(dir.file("missing.jsonl")), Error);

  // Unknown extra fields are tolerated with a warning.
  testutil::write_file(
      dir.file("extra.jsonl"),
      "{\"split\":\"test\",\"seed\":1,\"lexicon_hash\":\"x\"}\n"
      "{\"id\":\"c:0\",\"audio_ref\":{\"path\":\"\",\"start_s\":0.0,"
      "\"end_s\":2.0},\"hyp_text\":\"a\",\"label\":0,\"ref_text\":\"a\","
      "\"term_hits\":[],\"medical_label\":0,\"bogus\":42}\n");
  std::vector<std::string> warnings;
  auto m = read_manifest(dir.file("extra.jsonl"), &warnings);
  CHECK(m.examples.size() == 1);
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("bogus") != std::string::npos);

  // Duplicate ids are rejected.
  testutil::write_file(
      dir.file("dup.jsonl"),
      "{\"split\":\"test\",\"seed\":1,\"lexicon_hash\":\"x\"}\n"
      "{\"id\":\"c:0\",\"audio_ref\":{\"path\":\"\",\"start_s\":0.0,"
      "\"end_s\":2.0},\"hyp_text\":\"a\",\"label\":0,\"ref_text\":\"a\"}\n"
      "{\"id\":\"c:0\",\"audio_ref\":{\"path\":\"\",\"start_s\":0.0,"
      "\"end_s\":2.0},\"hyp_text\":\"b\",\"label\":1,\"ref_text\":\"a\"}\n");
  CHECK_THROWS_AS(read_manifest(dir.file("dup.jsonl")), Error);
}

TEST_CASE("medical label field selection") {
  auto e = quick_example("c", 0, 1);
  CHECK(example_label(e, LabelField::All) == 1);
  CHECK(example_label(e, LabelField::Medical) == 1);
  e.medical_label.reset();
  CHECK_THROWS_AS(example_label(e, LabelField::Medical), Error);
}

TEST_SUITE_END();
