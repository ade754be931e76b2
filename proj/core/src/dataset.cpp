// Copyright 2026 the asr-ward authors
// SPDX-License-Identifier: Apache-2.0

#include "asrward/dataset.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <map>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "asrward/errors.hpp"
#include "asrward/rng.hpp"

namespace asrward::dataset {

using nlohmann::json;

std::string EntailmentExample::conversation() const {
  std::size_t colon = id.find(':');
  return colon == std::string::npos ? id : id.substr(0, colon);
}

int example_label(const EntailmentExample& e, LabelField field) {
  if (field == LabelField::All) return e.label;
  if (!e.medical_label.has_value())
    throw Error(Errc::EmptyInput,
                "example " + e.id + " has no medical_label");
  return *e.medical_label;
}

std::pair<int, int> label_pair(const align::AlignedPair& pair,
                               const ontology::Lexicon& lex) {
  int label = 0;
  for (const auto& op : pair.trace) {
    if (op.kind != align::EditKind::Match) {
      label = 1;
      break;
    }
  }
  int medical = 0;
  auto ref_hits = ontology::find_terms(pair.ref_segment.tokens, lex);
  for (const auto& hit : ref_hits) {
    if (!ontology::term_occurs(hit.term, pair.hyp_segment.tokens)) {
      medical = 1;
      break;
    }
  }
  return {label, medical};
}

std::vector<EntailmentExample> filter_duration(
    std::vector<EntailmentExample> examples, double min_s, double max_s) {
  std::erase_if(examples, [&](const EntailmentExample& e) {
    double d = e.duration_s();
    return d < min_s || d > max_s;
  });
  return examples;
}

std::vector<EntailmentExample> balance(std::vector<EntailmentExample> examples,
                                       LabelField field, std::uint64_t seed) {
  std::vector<std::size_t> pos, neg;
  for (std::size_t i = 0; i < examples.size(); ++i) {
    (example_label(examples[i], field) == 1 ? pos : neg).push_back(i);
  }
  if (pos.empty())
    throw Error(Errc::EmptyClass, "no positive (error) examples to balance");
  if (neg.empty())
    throw Error(Errc::EmptyClass, "no negative (clean) examples to balance");

  Rng rng(hash_combine(seed, fnv1a64("balance")));
  auto& majority = pos.size() >= neg.size() ? pos : neg;
  std::size_t keep = std::min(pos.size(), neg.size());
  seeded_shuffle(majority, rng);
  majority.resize(keep);

  std::vector<std::size_t> kept;
  kept.reserve(2 * keep);
  kept.insert(kept.end(), pos.begin(), pos.end());
  kept.insert(kept.end(), neg.begin(), neg.end());
  // Keep selection order-independent of class sizes: sort, then reshuffle.
  std::sort(kept.begin(), kept.end());
  seeded_shuffle(kept, rng);

  std::vector<EntailmentExample> out;
  out.reserve(kept.size());
  for (std::size_t i : kept) out.push_back(std::move(examples[i]));
  return out;
}

Splits split_dataset(std::vector<EntailmentExample> examples,
                     std::uint64_t seed) {
  const std::size_t n = examples.size();
  if (n < 10)
    throw Error(Errc::TooFewExamples,
                "need at least 10 examples to split, got " + std::to_string(n));

  // Target counts: floor(80/10/10), remainder to train, then val, then test.
  std::size_t t = n * 8 / 10;
  std::size_t v = n / 10;
  std::size_t s = n / 10;
  std::size_t rem = n - t - v - s;
  if (rem >= 1) ++t;
  if (rem >= 2) ++v;

  // Group by conversation, preserving first-appearance order, then shuffle
  // group order by seed.
  std::vector<std::string> group_order;
  std::map<std::string, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < n; ++i) {
    std::string key = examples[i].conversation();
    auto [it, inserted] = groups.emplace(key, std::vector<std::size_t>{});
    if (inserted) group_order.push_back(key);
    it->second.push_back(i);
  }
  Rng rng(hash_combine(seed, fnv1a64("split")));
  seeded_shuffle(group_order, rng);

  // Each conversation goes wholly to the split with the largest remaining
  // deficit (ties: train > val > test). With conversation-sized quotas this
  // lands exactly on the targets; otherwise it is the closest grouped fill.
  struct Bucket {
    std::size_t target;
    std::vector<std::size_t> indices;
  };
  std::array<Bucket, 3> buckets{Bucket{t, {}}, Bucket{v, {}}, Bucket{s, {}}};
  for (const auto& key : group_order) {
    const auto& members = groups[key];
    std::size_t best = 0;
    long long best_deficit = -1;
    for (std::size_t b = 0; b < 3; ++b) {
      long long deficit = static_cast<long long>(buckets[b].target) -
                          static_cast<long long>(buckets[b].indices.size());
      if (deficit > best_deficit) {
        best_deficit = deficit;
        best = b;
      }
    }
    auto& dst = buckets[best].indices;
    dst.insert(dst.end(), members.begin(), members.end());
  }

  auto take = [&](const std::vector<std::size_t>& idx) {
    std::vector<EntailmentExample> out;
    out.reserve(idx.size());
    for (std::size_t i : idx) out.push_back(examples[i]);
    return out;
  };
  Splits out;
  out.train = take(buckets[0].indices);
  out.val = take(buckets[1].indices);
  out.test = take(buckets[2].indices);
  return out;
}

namespace {

json term_hit_to_json(const ontology::TermHit& h) {
  return json{{"term", h.term},
              {"group", ontology::to_string(h.group)},
              {"start", h.start},
              {"len", h.len}};
}

ontology::TermHit term_hit_from_json(const json& j) {
  ontology::TermHit h;
  h.term = j.at("term").get<std::string>();
  auto g = ontology::group_from_string(j.at("group").get<std::string>());
  if (!g) throw Error(Errc::Schema, "unknown semantic group in term hit");
  h.group = *g;
  h.start = j.at("start").get<std::size_t>();
  h.len = j.at("len").get<std::size_t>();
  return h;
}

json example_to_json(const EntailmentExample& e) {
  json j{{"id", e.id},
         {"audio_ref",
          {{"path", e.audio_ref.path},
           {"start_s", e.audio_ref.start_s},
           {"end_s", e.audio_ref.end_s}}},
         {"hyp_text", e.hyp_text},
         {"label", e.label},
         {"ref_text", e.ref_text}};
  if (e.medical_label.has_value())
    j["medical_label"] = *e.medical_label;
  else
    j["medical_label"] = nullptr;
  json hits = json::array();
  for (const auto& h : e.term_hits) hits.push_back(term_hit_to_json(h));
  j["term_hits"] = hits;
  return j;
}

const std::unordered_set<std::string>& known_example_fields() {
  static const std::unordered_set<std::string> fields = {
      "id",    "audio_ref", "hyp_text", "label",
      "ref_text", "medical_label", "term_hits"};
  return fields;
}

EntailmentExample example_from_json(const json& j,
                                    std::vector<std::string>* warnings) {
  if (!j.is_object()) throw Error(Errc::Schema, "example line is not an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!known_example_fields().count(it.key()) && warnings)
      warnings->push_back("unknown example field '" + it.key() + "' ignored");
  }
  EntailmentExample e;
  try {
    e.id = j.at("id").get<std::string>();
    const json& a = j.at("audio_ref");
    e.audio_ref.path = a.at("path").get<std::string>();
    e.audio_ref.start_s = a.at("start_s").get<double>();
    e.audio_ref.end_s = a.at("end_s").get<double>();
    e.hyp_text = j.at("hyp_text").get<std::string>();
    e.label = j.at("label").get<int>();
    e.ref_text = j.at("ref_text").get<std::string>();
    if (j.contains("medical_label") && !j.at("medical_label").is_null())
      e.medical_label = j.at("medical_label").get<int>();
    if (j.contains("term_hits")) {
      for (const auto& h : j.at("term_hits"))
        e.term_hits.push_back(term_hit_from_json(h));
    }
  } catch (const json::exception& ex) {
    throw Error(Errc::Schema, std::string("bad example record: ") + ex.what());
  }
  return e;
}

}  // namespace

void write_manifest(const DatasetManifest& manifest,
                    const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::Io, "cannot write manifest " + path.string());
  json header{{"split", manifest.split},
              {"seed", manifest.seed},
              {"lexicon_hash", manifest.lexicon_hash}};
  out << header.dump() << "\n";
  for (const auto& e : manifest.examples) out << example_to_json(e).dump() << "\n";
  if (!out) throw Error(Errc::Io, "short write to " + path.string());
}

DatasetManifest read_manifest(const std::filesystem::path& path,
                              std::vector<std::string>* warnings) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot open manifest " + path.string());
  DatasetManifest m;
  std::string line;
  if (!std::getline(in, line))
    throw Error(Errc::Schema, "manifest " + path.string() + " is empty");
  try {
    json header = json::parse(line);
    m.split = header.at("split").get<std::string>();
    m.seed = header.at("seed").get<std::uint64_t>();
    m.lexicon_hash = header.at("lexicon_hash").get<std::string>();
  } catch (const json::exception& ex) {
    throw Error(Errc::Schema, std::string("bad manifest header: ") + ex.what());
  }
  std::size_t line_no = 1;
  std::unordered_set<std::string> seen_ids;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& ex) {
      throw Error(Errc::Schema, "manifest line " + std::to_string(line_no) +
                                    ": " + ex.what());
    }
    EntailmentExample e = example_from_json(j, warnings);
    if (!seen_ids.insert(e.id).second)
      throw Error(Errc::Schema, "duplicate example id " + e.id);
    m.examples.push_back(std::move(e));
  }
  return m;
}

}  // namespace asrward::dataset
