// Copyright 2026 the asr-ward authors
// SPDX-License-Identifier: Apache-2.0
//
// asr-ward: align reference/hypothesis transcripts, build entailment
// datasets, simulate ASR errors, and train/evaluate the error detector.

#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "asrward/errors.hpp"
#include "asrward/pipeline.hpp"

namespace {

using asrward::pipeline::PipelineConfig;

// Flags shared by every subcommand; flag values win over the config file.
struct CommonOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<double> match_score;
  std::optional<double> mismatch_penalty;
  std::optional<double> gap_penalty;
  std::optional<std::string> lexicon;
  std::optional<double> threshold;

  void attach(CLI::App* app) {
    app->add_option("--config", config_path, "JSON config file");
    app->add_option("--seed", seed, "master seed (overrides config)");
    app->add_option("--match-score", match_score, "alignment match score");
    app->add_option("--mismatch-penalty", mismatch_penalty,
                    "alignment mismatch penalty (<= 0)");
    app->add_option("--gap-penalty", gap_penalty, "alignment gap penalty (<= 0)");
    app->add_option("--lexicon", lexicon, "term lexicon TSV");
    app->add_option("--threshold", threshold, "decision threshold");
  }

  PipelineConfig resolve() const {
    PipelineConfig cfg;
    if (!config_path.empty())
      cfg = asrward::pipeline::load_config(config_path);
    if (seed) {
      cfg.seed = *seed;
      cfg.train.seed = *seed;
    }
    if (match_score) cfg.align_params.match_score = *match_score;
    if (mismatch_penalty) cfg.align_params.mismatch_penalty = *mismatch_penalty;
    if (gap_penalty) cfg.align_params.gap_penalty = *gap_penalty;
    if (lexicon) cfg.lexicon_path = *lexicon;
    if (threshold) cfg.threshold = *threshold;
    cfg.validate();
    return cfg;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ASR error detection toolchain"};
  app.require_subcommand(1);

  CommonOptions common;

  auto* align = app.add_subcommand("align",
                                   "align reference and hypothesis transcripts");
  std::string align_ref, align_hyp, align_out;
  align->add_option("--ref", align_ref, "reference conversations JSON")->required();
  align->add_option("--hyp", align_hyp, "hypothesis conversations JSON")->required();
  align->add_option("--out", align_out, "aligned pairs JSONL output")->required();
  common.attach(align);

  auto* dataset = app.add_subcommand("dataset",
                                     "label pairs and build balanced manifests");
  std::string ds_aligned, ds_lexicon, ds_out_dir;
  dataset->add_option("--aligned", ds_aligned, "aligned pairs JSONL")->required();
  dataset->add_option("--lexicon-file", ds_lexicon, "term lexicon TSV")->required();
  dataset->add_option("--out-dir", ds_out_dir, "manifest output directory")
      ->required();
  common.attach(dataset);

  auto* simulate = app.add_subcommand("simulate",
                                      "build a simulated-error test manifest");
  std::string sim_manifest, sim_vocab, sim_out;
  simulate->add_option("--manifest", sim_manifest, "test manifest JSONL")
      ->required();
  simulate->add_option("--vocab", sim_vocab,
                       "vocabulary file (one word per line); defaults to the "
                       "manifest's own words");
  simulate->add_option("--out", sim_out, "simulated manifest output")->required();
  common.attach(simulate);

  auto* train = app.add_subcommand("train", "train the entailment head");
  std::string tr_dir, tr_task = asrward::pipeline::kTaskAll, tr_ckpt, tr_hist;
  train->add_option("--manifest-dir", tr_dir, "directory with task manifests")
      ->required();
  train->add_option("--task", tr_task, "all|med");
  train->add_option("--checkpoint-out", tr_ckpt, "checkpoint JSON output")
      ->required();
  train->add_option("--history-out", tr_hist,
                    "per-epoch metrics JSON (default <checkpoint>.history.json)");
  common.attach(train);

  auto* evaluate = app.add_subcommand("evaluate",
                                      "score a manifest and write reports");
  std::string ev_manifest, ev_ckpt, ev_lexicon, ev_report,
      ev_task = asrward::pipeline::kTaskAll;
  evaluate->add_option("--manifest", ev_manifest, "manifest JSONL")->required();
  evaluate->add_option("--checkpoint", ev_ckpt, "checkpoint JSON")->required();
  evaluate->add_option("--lexicon-file", ev_lexicon, "term lexicon TSV")
      ->required();
  evaluate->add_option("--report-out", ev_report,
                       "report basename (writes .json and .txt)")
      ->required();
  evaluate->add_option("--task", ev_task, "all|med");
  common.attach(evaluate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    // CLI11's own exit codes: keep 0 for --help, input error otherwise.
    return rc == 0 ? asrward::kExitOk : asrward::kExitInput;
  }

  try {
    PipelineConfig cfg = common.resolve();
    if (align->parsed())
      return asrward::pipeline::cmd_align(align_ref, align_hyp, align_out, cfg);
    if (dataset->parsed())
      return asrward::pipeline::cmd_dataset(ds_aligned, ds_lexicon, ds_out_dir,
                                            cfg);
    if (simulate->parsed())
      return asrward::pipeline::cmd_simulate(sim_manifest, sim_vocab, sim_out,
                                             cfg);
    if (train->parsed()) {
      std::filesystem::path hist =
          tr_hist.empty() ? std::filesystem::path(tr_ckpt + ".history.json")
                          : std::filesystem::path(tr_hist);
      return asrward::pipeline::cmd_train(tr_dir, tr_task, tr_ckpt, hist, cfg);
    }
    if (evaluate->parsed())
      return asrward::pipeline::cmd_evaluate(ev_manifest, ev_ckpt, ev_lexicon,
                                             ev_report, ev_task, cfg);
  } catch (const asrward::Error& e) {
    std::fprintf(stderr, "asr-ward: %s\n", e.what());
    return e.exit_code();
  }
  return asrward::kExitInput;
}
