// Copyright 2026 the asr-ward authors
// SPDX-License-Identifier: Apache-2.0

#include "asrward/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "asrward/errors.hpp"
#include "asrward/ontology.hpp"
#include "asrward/parallel.hpp"
#include "asrward/transcript.hpp"

namespace asrward::pipeline {

using nlohmann::json;

void PipelineConfig::validate() const {
  align_params.validate();
  train.validate();
  if (!(min_duration_s >= 0.0) || !(max_duration_s > min_duration_s))
    throw Error(Errc::Range, "duration bounds must satisfy 0 <= min < max");
  if (!(threshold >= 0.0 && threshold <= 1.0))
    throw Error(Errc::Range, "threshold must be in [0, 1]");
  if (d_proj < 1) throw Error(Errc::Range, "d_proj must be >= 1");
  if (sim_max_edit < 1) throw Error(Errc::Range, "simulate max_edit must be >= 1");
}

namespace {

void parse_encoder_spec(const json& j, encoders::EncoderSpec& spec,
                        const std::string& which) {
  if (j.contains("kind")) {
    auto kind = encoders::encoder_kind_from_string(j.at("kind").get<std::string>());
    if (!kind)
      throw Error(Errc::Format, "unknown " + which + " encoder kind '" +
                                    j.at("kind").get<std::string>() + "'");
    spec.kind = *kind;
  }
  if (j.contains("dim")) spec.dim = j.at("dim").get<std::size_t>();
  if (j.contains("params")) {
    for (auto it = j.at("params").begin(); it != j.at("params").end(); ++it)
      spec.params[it.key()] = it.value().get<std::string>();
  }
}

}  // namespace

PipelineConfig parse_config(const std::string& text, const std::string& origin) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& ex) {
    throw Error(Errc::Format, origin + ": " + ex.what());
  }
  if (!j.is_object()) throw Error(Errc::Format, origin + ": config must be an object");

  static const std::unordered_set<std::string> known = {
      "seed",   "align",   "lexicon_path",    "dims",     "train",
      "encoder", "duration_bounds", "simulate", "threshold"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!known.count(it.key()))
      throw Error(Errc::Format, origin + ": unknown config key '" + it.key() + "'");
  }

  PipelineConfig cfg;
  try {
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    cfg.train.seed = cfg.seed;
    if (j.contains("align")) {
      const json& a = j.at("align");
      if (a.contains("match_score"))
        cfg.align_params.match_score = a.at("match_score").get<double>();
      if (a.contains("mismatch_penalty"))
        cfg.align_params.mismatch_penalty = a.at("mismatch_penalty").get<double>();
      if (a.contains("gap_penalty"))
        cfg.align_params.gap_penalty = a.at("gap_penalty").get<double>();
    }
    if (j.contains("lexicon_path"))
      cfg.lexicon_path = j.at("lexicon_path").get<std::string>();
    if (j.contains("encoder")) {
      const json& e = j.at("encoder");
      if (e.contains("acoustic"))
        parse_encoder_spec(e.at("acoustic"), cfg.encoders.acoustic, "acoustic");
      if (e.contains("linguistic"))
        parse_encoder_spec(e.at("linguistic"), cfg.encoders.linguistic,
                           "linguistic");
    }
    if (j.contains("dims")) {
      const json& d = j.at("dims");
      if (d.contains("d_proj")) cfg.d_proj = d.at("d_proj").get<std::size_t>();
      if (d.contains("d_a")) cfg.encoders.acoustic.dim = d.at("d_a").get<std::size_t>();
      if (d.contains("d_l"))
        cfg.encoders.linguistic.dim = d.at("d_l").get<std::size_t>();
    }
    if (j.contains("train")) {
      const json& t = j.at("train");
      if (t.contains("learning_rate"))
        cfg.train.learning_rate = t.at("learning_rate").get<double>();
      if (t.contains("epochs")) cfg.train.epochs = t.at("epochs").get<std::size_t>();
      if (t.contains("batch_size"))
        cfg.train.batch_size = t.at("batch_size").get<std::size_t>();
      if (t.contains("seed")) cfg.train.seed = t.at("seed").get<std::uint64_t>();
      if (t.contains("optimizer")) {
        std::string opt = t.at("optimizer").get<std::string>();
        if (opt == "adam")
          cfg.train.optimizer = entail::Optimizer::Adam;
        else if (opt == "sgd")
          cfg.train.optimizer = entail::Optimizer::Sgd;
        else
          throw Error(Errc::Format, origin + ": unknown optimizer '" + opt + "'");
      }
    }
    if (j.contains("duration_bounds")) {
      const json& d = j.at("duration_bounds");
      if (!d.is_array() || d.size() != 2)
        throw Error(Errc::Format, origin + ": duration_bounds must be [min, max]");
      cfg.min_duration_s = d[0].get<double>();
      cfg.max_duration_s = d[1].get<double>();
    }
    if (j.contains("simulate")) {
      const json& s = j.at("simulate");
      if (s.contains("max_edit"))
        cfg.sim_max_edit = s.at("max_edit").get<std::size_t>();
    }
    if (j.contains("threshold")) cfg.threshold = j.at("threshold").get<double>();
  } catch (const json::exception& ex) {
    throw Error(Errc::Format, origin + ": " + ex.what());
  }
  cfg.validate();
  return cfg;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot open config " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return parse_config(text, path.string());
}

dataset::LabelField label_field_for_task(const std::string& task) {
  if (task == kTaskAll) return dataset::LabelField::All;
  if (task == kTaskMedical) return dataset::LabelField::Medical;
  throw Error(Errc::Format, "unknown task '" + task + "' (use all|med)");
}

std::string manifest_filename(const std::string& task,
                              const std::string& split) {
  return task + "_" + split + ".jsonl";
}

// ---------------------------------------------------------------------------
// align

namespace {

constexpr const char* kAlignFormat = "awalign-1";

json trace_to_json(const std::vector<align::EditOp>& trace,
                   std::size_t ref_offset, std::size_t hyp_offset) {
  json out = json::array();
  for (const auto& op : trace) {
    json o{{"kind", align::to_string(op.kind)}};
    if (op.ref_index) o["ref"] = *op.ref_index - ref_offset;
    if (op.hyp_index) o["hyp"] = *op.hyp_index - hyp_offset;
    out.push_back(std::move(o));
  }
  return out;
}

std::string surface_join(std::span<const textnorm::Token> tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += tokens[i].surface;
  }
  return out;
}

struct AlignedRecord {
  std::string conversation_id;
  std::size_t pair_index = 0;
  std::string audio_path;
  std::string ref_text, ref_speaker;
  double ref_start = 0.0, ref_end = 0.0;
  std::string hyp_text;
  double hyp_start = 0.0, hyp_end = 0.0;
  std::vector<align::EditOp> trace;  // pair-local indices
  double score = 0.0;
};

AlignedRecord record_from_json(const json& j, const std::string& origin) {
  AlignedRecord r;
  try {
    r.conversation_id = j.at("conversation_id").get<std::string>();
    r.pair_index = j.at("pair_index").get<std::size_t>();
    r.audio_path = j.value("audio_path", std::string{});
    const json& ref = j.at("ref");
    r.ref_text = ref.at("text").get<std::string>();
    r.ref_start = ref.at("start_s").get<double>();
    r.ref_end = ref.at("end_s").get<double>();
    r.ref_speaker = ref.value("speaker", std::string{});
    const json& hyp = j.at("hyp");
    r.hyp_text = hyp.at("text").get<std::string>();
    r.hyp_start = hyp.at("start_s").get<double>();
    r.hyp_end = hyp.at("end_s").get<double>();
    for (const auto& o : j.at("trace")) {
      align::EditOp op;
      auto kind = align::edit_kind_from_string(o.at("kind").get<std::string>());
      if (!kind) throw Error(Errc::Schema, origin + ": unknown trace op kind");
      op.kind = *kind;
      if (o.contains("ref")) op.ref_index = o.at("ref").get<std::size_t>();
      if (o.contains("hyp")) op.hyp_index = o.at("hyp").get<std::size_t>();
      r.trace.push_back(op);
    }
    r.score = j.at("score").get<double>();
  } catch (const json::exception& ex) {
    throw Error(Errc::Schema, origin + ": bad aligned record: " + ex.what());
  }
  return r;
}

}  // namespace

AlignSummary run_align(const std::filesystem::path& ref_path,
                       const std::filesystem::path& hyp_path,
                       const std::filesystem::path& out_path,
                       const PipelineConfig& config) {
  config.validate();
  auto ref_convs = transcript::read_conversations(ref_path);
  auto hyp_convs = transcript::read_conversations(hyp_path);
  // Output and reductions are ordered by conversation id, independent of the
  // input file ordering.
  std::sort(ref_convs.begin(), ref_convs.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });
  std::unordered_map<std::string, const transcript::Conversation*> hyp_by_id;
  for (const auto& c : hyp_convs) hyp_by_id[c.id] = &c;
  for (const auto& c : ref_convs) {
    if (!hyp_by_id.count(c.id))
      throw Error(Errc::Format, "hypothesis file has no conversation '" +
                                    c.id + "'");
  }

  std::optional<ontology::Lexicon> lex;
  if (!config.lexicon_path.empty())
    lex = ontology::load_lexicon(config.lexicon_path);

  struct ConvResult {
    std::vector<std::string> lines;
    metrics::WerStats wer;
    metrics::BleuStats bleu;
    metrics::MedicalPrfStats med;
    std::size_t pairs = 0;
  };
  std::vector<ConvResult> results(ref_convs.size());

  parallel_for(ref_convs.size(), [&](std::size_t ci) {
    const auto& ref_conv = ref_convs[ci];
    const auto& hyp_conv = *hyp_by_id.at(ref_conv.id);
    auto ref_tok = transcript::build_segments(ref_conv);
    auto hyp_tok = transcript::build_segments(hyp_conv);

    auto pairs = align::align_transcripts(ref_tok.stream, hyp_tok.stream,
                                          ref_tok.segments, hyp_tok.segments,
                                          config.align_params);
    ConvResult& res = results[ci];
    res.pairs = pairs.size();
    if (!ref_tok.stream.empty())
      res.wer.add(ref_tok.stream, hyp_tok.stream);

    for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
      const auto& pair = pairs[pi];
      if (!pair.ref_segment.tokens.empty() && !pair.hyp_segment.tokens.empty())
        res.bleu.add(pair.ref_segment.tokens, pair.hyp_segment.tokens);
      if (lex) {
        auto hits = ontology::find_terms(pair.ref_segment.tokens, *lex);
        res.med.add(hits, pair.hyp_segment.tokens, *lex);
      }

      json line{{"conversation_id", ref_conv.id},
                {"pair_index", pi},
                {"ref",
                 {{"text", ref_tok.segment_texts[pi]},
                  {"start_s", pair.ref_segment.start_s},
                  {"end_s", pair.ref_segment.end_s},
                  {"speaker", pair.ref_segment.speaker}}},
                {"hyp",
                 {{"text", surface_join(pair.hyp_segment.tokens)},
                  {"start_s", pair.hyp_segment.start_s},
                  {"end_s", pair.hyp_segment.end_s}}},
                {"trace", trace_to_json(pair.trace, pair.ref_start,
                                        pair.hyp_start)},
                {"score", pair.score}};
      if (!ref_conv.audio_path.empty()) line["audio_path"] = ref_conv.audio_path;
      res.lines.push_back(line.dump());
    }
  });

  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw Error(Errc::Io, "cannot write aligned pairs " + out_path.string());
  json header{{"format", kAlignFormat},
              {"align",
               {{"match_score", config.align_params.match_score},
                {"mismatch_penalty", config.align_params.mismatch_penalty},
                {"gap_penalty", config.align_params.gap_penalty}}}};
  out << header.dump() << "\n";

  AlignSummary summary;
  metrics::WerStats wer_total;
  metrics::BleuStats bleu_total;
  metrics::MedicalPrfStats med_total;
  for (const auto& res : results) {
    for (const auto& line : res.lines) out << line << "\n";
    wer_total += res.wer;
    bleu_total += res.bleu;
    med_total.recovered += res.med.recovered;
    med_total.ref_total += res.med.ref_total;
    med_total.hyp_recovered += res.med.hyp_recovered;
    med_total.hyp_total += res.med.hyp_total;
    summary.pairs += res.pairs;
  }
  if (!out) throw Error(Errc::Io, "short write to " + out_path.string());
  summary.conversations = ref_convs.size();
  summary.wer = wer_total.ref_len > 0 ? wer_total.percent() : 0.0;
  summary.bleu = bleu_total.score();
  if (lex) summary.medical = med_total.finalize();
  return summary;
}

// ---------------------------------------------------------------------------
// dataset

namespace {

std::vector<AlignedRecord> read_aligned(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot open aligned pairs " + path.string());
  std::string line;
  if (!std::getline(in, line))
    throw Error(Errc::Schema, path.string() + " is empty");
  try {
    json header = json::parse(line);
    if (header.at("format").get<std::string>() != kAlignFormat)
      throw Error(Errc::Schema, path.string() + ": unsupported format");
  } catch (const json::exception& ex) {
    throw Error(Errc::Schema, path.string() + ": bad header: " + ex.what());
  }
  std::vector<AlignedRecord> records;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& ex) {
      throw Error(Errc::Schema, path.string() + " line " +
                                    std::to_string(line_no) + ": " + ex.what());
    }
    records.push_back(record_from_json(j, path.string()));
  }
  return records;
}

std::string pad4(std::size_t n) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04zu", n);
  return buf;
}

dataset::EntailmentExample example_from_record(const AlignedRecord& r,
                                               const ontology::Lexicon& lex) {
  align::AlignedPair pair;
  pair.ref_segment.tokens = textnorm::normalize(r.ref_text);
  pair.ref_segment.start_s = r.ref_start;
  pair.ref_segment.end_s = r.ref_end;
  pair.ref_segment.speaker = r.ref_speaker;
  pair.hyp_segment.tokens = textnorm::normalize(r.hyp_text);
  pair.hyp_segment.start_s = r.hyp_start;
  pair.hyp_segment.end_s = r.hyp_end;
  pair.trace = r.trace;
  pair.score = r.score;

  dataset::EntailmentExample e;
  e.id = r.conversation_id + ":" + pad4(r.pair_index);
  e.audio_ref = {r.audio_path, r.ref_start, r.ref_end};
  e.hyp_text = r.hyp_text;
  e.ref_text = r.ref_text;
  auto [label, medical] = dataset::label_pair(pair, lex);
  e.label = label;
  e.medical_label = medical;
  e.term_hits = ontology::find_terms(pair.ref_segment.tokens, lex);
  return e;
}

DatasetSummary::TaskCounts build_task(
    const std::vector<dataset::EntailmentExample>& examples,
    dataset::LabelField field, const std::string& task,
    const std::filesystem::path& out_dir, std::uint64_t seed,
    const std::string& lexicon_hash) {
  auto balanced = dataset::balance(examples, field, seed);
  DatasetSummary::TaskCounts counts;
  counts.balanced = balanced.size();
  auto splits = dataset::split_dataset(std::move(balanced), seed);
  counts.train = splits.train.size();
  counts.val = splits.val.size();
  counts.test = splits.test.size();

  auto write = [&](const char* split, std::vector<dataset::EntailmentExample> ex) {
    dataset::DatasetManifest m;
    m.split = split;
    m.examples = std::move(ex);
    m.seed = seed;
    m.lexicon_hash = lexicon_hash;
    dataset::write_manifest(m, out_dir / manifest_filename(task, split));
  };
  write("train", std::move(splits.train));
  write("val", std::move(splits.val));
  write("test", std::move(splits.test));
  return counts;
}

}  // namespace

DatasetSummary run_dataset(const std::filesystem::path& aligned_path,
                           const std::filesystem::path& lexicon_path,
                           const std::filesystem::path& out_dir,
                           const PipelineConfig& config) {
  config.validate();
  auto lex = ontology::load_lexicon(lexicon_path);
  for (const auto& w : lex.warnings)
    std::cerr << "asr-ward: lexicon: " << w << "\n";
  auto records = read_aligned(aligned_path);

  std::filesystem::create_directories(out_dir);

  DatasetSummary summary;
  summary.pairs_in = records.size();
  std::vector<dataset::EntailmentExample> examples(records.size());
  parallel_for(records.size(), [&](std::size_t i) {
    examples[i] = example_from_record(records[i], lex);
  });
  std::unordered_set<std::string> ids;
  for (const auto& e : examples) {
    if (!ids.insert(e.id).second)
      throw Error(Errc::Schema, "duplicate example id " + e.id);
  }

  examples = dataset::filter_duration(std::move(examples),
                                      config.min_duration_s,
                                      config.max_duration_s);
  summary.after_duration_filter = examples.size();

  std::string lexicon_hash = lex.hash();
  summary.all = build_task(examples, dataset::LabelField::All, kTaskAll,
                           out_dir, config.seed, lexicon_hash);
  summary.medical = build_task(examples, dataset::LabelField::Medical,
                               kTaskMedical, out_dir, config.seed,
                               lexicon_hash);
  return summary;
}

// ---------------------------------------------------------------------------
// simulate

SimulateSummary run_simulate(const std::filesystem::path& manifest_path,
                             const std::filesystem::path& vocab_path,
                             const std::filesystem::path& out_path,
                             const PipelineConfig& config) {
  config.validate();
  auto manifest = dataset::read_manifest(manifest_path);

  std::vector<std::string> vocab;
  if (!vocab_path.empty()) {
    std::ifstream in(vocab_path, std::ios::binary);
    if (!in) throw Error(Errc::Io, "cannot open vocab " + vocab_path.string());
    std::string line;
    while (std::getline(in, line)) {
      for (const auto& tok : textnorm::normalize(line))
        vocab.push_back(tok.norm);
    }
  } else {
    for (const auto& e : manifest.examples) {
      for (const auto& tok : textnorm::normalize(e.ref_text))
        vocab.push_back(tok.norm);
      for (const auto& tok : textnorm::normalize(e.hyp_text))
        vocab.push_back(tok.norm);
    }
  }

  auto cm = simulate::build_confusion(std::move(vocab), config.sim_max_edit,
                                      config.seed);
  SimulateSummary summary;
  auto simulated = simulate::simulate_errors(manifest.examples, cm,
                                             config.align_params,
                                             &summary.stats);
  summary.examples = simulated.size();

  dataset::DatasetManifest out;
  out.split = "test_simulated";
  out.examples = std::move(simulated);
  out.seed = config.seed;
  out.lexicon_hash = manifest.lexicon_hash;
  dataset::write_manifest(out, out_path);
  return summary;
}

// ---------------------------------------------------------------------------
// train

TrainSummary run_train(const std::filesystem::path& manifest_dir,
                       const std::string& task,
                       const std::filesystem::path& checkpoint_out,
                       const std::filesystem::path& history_out,
                       const PipelineConfig& config) {
  config.validate();
  dataset::LabelField target = label_field_for_task(task);
  auto train_manifest =
      dataset::read_manifest(manifest_dir / manifest_filename(task, "train"));
  auto val_manifest =
      dataset::read_manifest(manifest_dir / manifest_filename(task, "val"));

  auto result = entail::train(train_manifest, &val_manifest, config.encoders,
                              target, config.head_dims(), config.train);
  entail::save_params(result.params, checkpoint_out);

  json epochs = json::array();
  for (const auto& s : result.history) {
    json e{{"epoch", s.epoch}, {"train_loss", s.train_loss}};
    if (s.val_accuracy) e["val_accuracy"] = *s.val_accuracy;
    if (s.val_cer) e["val_cer"] = *s.val_cer;
    epochs.push_back(std::move(e));
  }
  json hist{{"format", "awhist-1"}, {"task", task}, {"epochs", epochs}};
  std::ofstream out(history_out, std::ios::binary);
  if (!out) throw Error(Errc::Io, "cannot write history " + history_out.string());
  out << hist.dump(2) << "\n";
  if (!out) throw Error(Errc::Io, "short write to " + history_out.string());

  TrainSummary summary;
  summary.train_examples = train_manifest.examples.size();
  summary.val_examples = val_manifest.examples.size();
  if (!result.history.empty()) {
    const auto& last = result.history.back();
    summary.final_train_loss = last.train_loss;
    summary.final_val_accuracy = last.val_accuracy;
    summary.final_val_cer = last.val_cer;
  }
  return summary;
}

// ---------------------------------------------------------------------------
// evaluate

EvaluateSummary run_evaluate(const std::filesystem::path& manifest_path,
                             const std::filesystem::path& checkpoint_path,
                             const std::filesystem::path& lexicon_path,
                             const std::filesystem::path& report_out,
                             const std::string& task,
                             const PipelineConfig& config) {
  config.validate();
  dataset::LabelField target = label_field_for_task(task);
  auto manifest = dataset::read_manifest(manifest_path);
  auto params = entail::load_params(checkpoint_path);
  auto lex = ontology::load_lexicon(lexicon_path);

  auto predictions = entail::predict(manifest, config.encoders, params, target,
                                     config.threshold);
  std::vector<metrics::Prediction> preds;
  preds.reserve(predictions.size());
  for (const auto& p : predictions)
    preds.push_back(metrics::Prediction{p.id, p.score, p.predicted});

  auto report = metrics::breakdown(preds, manifest.examples, lex, target);

  auto write_text = [](const std::filesystem::path& path, const std::string& s) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::Io, "cannot write report " + path.string());
    out << s;
    if (!out) throw Error(Errc::Io, "short write to " + path.string());
  };
  std::filesystem::path json_path = report_out;
  json_path += ".json";
  std::filesystem::path text_path = report_out;
  text_path += ".txt";
  write_text(json_path, metrics::render_report(report, metrics::ReportFormat::Json));
  write_text(text_path, metrics::render_report(report, metrics::ReportFormat::Text));

  EvaluateSummary summary;
  summary.examples = manifest.examples.size();
  summary.overall = report.overall.metrics;
  return summary;
}

// ---------------------------------------------------------------------------
// exit-code wrappers

namespace {

template <typename Fn>
int guarded(Fn&& fn) noexcept {
  try {
    fn();
    return kExitOk;
  } catch (const Error& e) {
    std::cerr << "asr-ward: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "asr-ward: internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace

int cmd_align(const std::filesystem::path& ref_path,
              const std::filesystem::path& hyp_path,
              const std::filesystem::path& out_path,
              const PipelineConfig& config) noexcept {
  return guarded([&] {
    auto s = run_align(ref_path, hyp_path, out_path, config);
    std::printf("align: conversations=%zu pairs=%zu wer=%.2f bleu=%.2f",
                s.conversations, s.pairs, s.wer, s.bleu);
    if (s.medical) {
      std::printf(" med_p=%.4f med_r=%.4f med_f1=%.4f", s.medical->precision,
                  s.medical->recall, s.medical->f1);
    }
    std::printf("\n");
  });
}

int cmd_dataset(const std::filesystem::path& aligned_path,
                const std::filesystem::path& lexicon_path,
                const std::filesystem::path& out_dir,
                const PipelineConfig& config) noexcept {
  return guarded([&] {
    auto s = run_dataset(aligned_path, lexicon_path, out_dir, config);
    std::printf(
        "dataset: pairs=%zu kept=%zu all=%zu/%zu/%zu med=%zu/%zu/%zu\n",
        s.pairs_in, s.after_duration_filter, s.all.train, s.all.val,
        s.all.test, s.medical.train, s.medical.val, s.medical.test);
  });
}

int cmd_simulate(const std::filesystem::path& manifest_path,
                 const std::filesystem::path& vocab_path,
                 const std::filesystem::path& out_path,
                 const PipelineConfig& config) noexcept {
  return guarded([&] {
    auto s = run_simulate(manifest_path, vocab_path, out_path, config);
    std::printf("simulate: examples=%zu replaced=%zu skipped=%zu\n",
                s.examples, s.stats.replaced, s.stats.skipped);
  });
}

int cmd_train(const std::filesystem::path& manifest_dir,
              const std::string& task,
              const std::filesystem::path& checkpoint_out,
              const std::filesystem::path& history_out,
              const PipelineConfig& config) noexcept {
  return guarded([&] {
    auto s = run_train(manifest_dir, task, checkpoint_out, history_out, config);
    std::printf("train: task=%s train=%zu val=%zu loss=%.6f", task.c_str(),
                s.train_examples, s.val_examples, s.final_train_loss);
    if (s.final_val_accuracy)
      std::printf(" val_acc=%.4f val_cer=%.2f", *s.final_val_accuracy,
                  *s.final_val_cer);
    std::printf("\n");
  });
}

int cmd_evaluate(const std::filesystem::path& manifest_path,
                 const std::filesystem::path& checkpoint_path,
                 const std::filesystem::path& lexicon_path,
                 const std::filesystem::path& report_out,
                 const std::string& task,
                 const PipelineConfig& config) noexcept {
  return guarded([&] {
    auto s = run_evaluate(manifest_path, checkpoint_path, lexicon_path,
                          report_out, task, config);
    std::printf("evaluate: task=%s examples=%zu p=%.4f r=%.4f f1=%.4f cer=%.2f\n",
                task.c_str(), s.examples, s.overall.precision,
                s.overall.recall, s.overall.f1, s.overall.cer);
  });
}

}  // namespace asrward::pipeline
