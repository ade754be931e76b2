// Copyright 2026 the asr-ward authors
// SPDX-License-Identifier: Apache-2.0

#include "asrward/entail.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include <nlohmann/json.hpp>

#include "asrward/errors.hpp"
#include "asrward/parallel.hpp"
#include "asrward/rng.hpp"
#include "asrward/textnorm.hpp"

namespace asrward::entail {

using nlohmann::json;

void HeadParams::validate() const {
  auto check = [](const std::vector<double>& v, std::size_t n, const char* name) {
    if (v.size() != n)
      throw Error(Errc::DimMismatch, std::string(name) + " has wrong shape");
    for (double x : v)
      if (!std::isfinite(x))
        throw Error(Errc::Schema, std::string(name) + " contains non-finite values");
  };
  check(w_a, dims.d_proj * dims.d_a, "W_a");
  check(b_a, dims.d_proj, "b_a");
  check(w_l, dims.d_proj * dims.d_l, "W_l");
  check(b_l, dims.d_proj, "b_l");
  check(w_e, 2 * dims.d_proj, "W_e");
  if (!std::isfinite(b_e)) throw Error(Errc::Schema, "b_e is non-finite");
}

void TrainConfig::validate() const {
  if (!(learning_rate >= 0.0))
    throw Error(Errc::Range, "learning_rate must be >= 0");
  if (epochs < 1) throw Error(Errc::Range, "epochs must be >= 1");
  if (batch_size < 1) throw Error(Errc::Range, "batch_size must be >= 1");
}

std::vector<double> mean_pool(const encoders::FeatureSequence& seq) {
  if (seq.frames() == 0)
    throw Error(Errc::EmptyInput, "cannot pool an empty feature sequence");
  std::vector<double> out(seq.dim, 0.0);
  for (std::size_t f = 0; f < seq.frames(); ++f) {
    auto frame = seq.frame(f);
    for (std::size_t d = 0; d < seq.dim; ++d) out[d] += frame[d];
  }
  double inv = 1.0 / static_cast<double>(seq.frames());
  for (double& v : out) v *= inv;
  return out;
}

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// y = W x + b with row-major W [rows x cols].
void affine(std::span<const double> w, std::span<const double> b,
            std::span<const double> x, std::span<double> out) {
  std::size_t rows = b.size();
  std::size_t cols = x.size();
  for (std::size_t r = 0; r < rows; ++r) {
    double acc = b[r];
    const double* wr = w.data() + r * cols;
    for (std::size_t c = 0; c < cols; ++c) acc += wr[c] * x[c];
    out[r] = acc;
  }
}

}  // namespace

double forward_pooled(std::span<const double> acoustic,
                      std::span<const double> linguistic,
                      const HeadParams& p) {
  if (acoustic.size() != p.dims.d_a)
    throw Error(Errc::DimMismatch, "acoustic vector does not match d_a");
  if (linguistic.size() != p.dims.d_l)
    throw Error(Errc::DimMismatch, "linguistic vector does not match d_l");

  std::vector<double> a(p.dims.d_proj), l(p.dims.d_proj);
  affine(p.w_a, p.b_a, acoustic, a);
  affine(p.w_l, p.b_l, linguistic, l);
  double z = p.b_e;
  for (std::size_t i = 0; i < p.dims.d_proj; ++i) z += p.w_e[i] * a[i];
  for (std::size_t i = 0; i < p.dims.d_proj; ++i)
    z += p.w_e[p.dims.d_proj + i] * l[i];
  return sigmoid(z);
}

double forward(const encoders::FeatureSequence& acoustic,
               const encoders::FeatureSequence& linguistic,
               const HeadParams& p) {
  return forward_pooled(mean_pool(acoustic), mean_pool(linguistic), p);
}

double loss(double e, int y) {
  constexpr double kEps = 1e-7;
  double clamped = std::min(1.0 - kEps, std::max(kEps, e));
  return y == 1 ? -std::log(clamped) : -std::log(1.0 - clamped);
}

Gradients gradients(std::span<const PooledExample> batch, const HeadParams& p) {
  if (batch.empty()) throw Error(Errc::EmptyInput, "gradient batch is empty");
  Gradients g;
  g.w_a.assign(p.w_a.size(), 0.0);
  g.b_a.assign(p.b_a.size(), 0.0);
  g.w_l.assign(p.w_l.size(), 0.0);
  g.b_l.assign(p.b_l.size(), 0.0);
  g.w_e.assign(p.w_e.size(), 0.0);

  const std::size_t dp = p.dims.d_proj;
  std::vector<double> a(dp), l(dp);
  for (const auto& ex : batch) {
    if (ex.acoustic.size() != p.dims.d_a || ex.linguistic.size() != p.dims.d_l)
      throw Error(Errc::DimMismatch, "pooled example does not match head dims");
    affine(p.w_a, p.b_a, ex.acoustic, a);
    affine(p.w_l, p.b_l, ex.linguistic, l);
    double z = p.b_e;
    for (std::size_t i = 0; i < dp; ++i) z += p.w_e[i] * a[i];
    for (std::size_t i = 0; i < dp; ++i) z += p.w_e[dp + i] * l[i];
    double e = sigmoid(z);

    // dL/dz for BCE through a sigmoid.
    double dz = e - static_cast<double>(ex.label);

    for (std::size_t i = 0; i < dp; ++i) {
      g.w_e[i] += dz * a[i];
      g.w_e[dp + i] += dz * l[i];
    }
    g.b_e += dz;
    for (std::size_t i = 0; i < dp; ++i) {
      double da = dz * p.w_e[i];
      double dl = dz * p.w_e[dp + i];
      g.b_a[i] += da;
      g.b_l[i] += dl;
      double* gwa = g.w_a.data() + i * p.dims.d_a;
      for (std::size_t c = 0; c < p.dims.d_a; ++c)
        gwa[c] += da * ex.acoustic[c];
      double* gwl = g.w_l.data() + i * p.dims.d_l;
      for (std::size_t c = 0; c < p.dims.d_l; ++c)
        gwl[c] += dl * ex.linguistic[c];
    }
  }

  double inv = 1.0 / static_cast<double>(batch.size());
  auto scale = [inv](std::vector<double>& v) {
    for (double& x : v) x *= inv;
  };
  scale(g.w_a);
  scale(g.b_a);
  scale(g.w_l);
  scale(g.b_l);
  scale(g.w_e);
  g.b_e *= inv;
  return g;
}

HeadParams init_params(const HeadDims& dims, std::uint64_t seed) {
  HeadParams p;
  p.dims = dims;
  p.seed = seed;
  Rng rng(hash_combine(seed, fnv1a64("head-init")));
  auto fill = [&rng](std::vector<double>& v, std::size_t n, std::size_t fan_in) {
    double scale = 1.0 / std::sqrt(static_cast<double>(fan_in));
    v.resize(n);
    for (double& x : v) x = rng.uniform_symmetric(scale);
  };
  fill(p.w_a, dims.d_proj * dims.d_a, dims.d_a);
  fill(p.b_a, dims.d_proj, dims.d_a);
  fill(p.w_l, dims.d_proj * dims.d_l, dims.d_l);
  fill(p.b_l, dims.d_proj, dims.d_l);
  fill(p.w_e, 2 * dims.d_proj, 2 * dims.d_proj);
  p.b_e = rng.uniform_symmetric(1.0 / std::sqrt(2.0 * dims.d_proj));
  return p;
}

namespace {

struct AdamState {
  std::vector<double> m, v;
  explicit AdamState(std::size_t n) : m(n, 0.0), v(n, 0.0) {}
};

void apply_update(std::vector<double>& param, const std::vector<double>& grad,
                  AdamState* adam, std::size_t step, const TrainConfig& cfg) {
  if (cfg.optimizer == Optimizer::Sgd || adam == nullptr) {
    for (std::size_t i = 0; i < param.size(); ++i)
      param[i] -= cfg.learning_rate * grad[i];
    return;
  }
  double b1 = cfg.adam_beta1, b2 = cfg.adam_beta2;
  double bias1 = 1.0 - std::pow(b1, static_cast<double>(step));
  double bias2 = 1.0 - std::pow(b2, static_cast<double>(step));
  for (std::size_t i = 0; i < param.size(); ++i) {
    adam->m[i] = b1 * adam->m[i] + (1.0 - b1) * grad[i];
    adam->v[i] = b2 * adam->v[i] + (1.0 - b2) * grad[i] * grad[i];
    double mhat = adam->m[i] / bias1;
    double vhat = adam->v[i] / bias2;
    param[i] -= cfg.learning_rate * mhat / (std::sqrt(vhat) + cfg.adam_eps);
  }
}

}  // namespace

TrainResult train_pooled(std::span<const PooledExample> train,
                         const std::vector<PooledExample>* val,
                         const HeadDims& dims, const TrainConfig& cfg) {
  cfg.validate();
  if (train.empty()) throw Error(Errc::EmptyInput, "training set is empty");

  TrainResult result;
  result.params = init_params(dims, cfg.seed);
  HeadParams& p = result.params;

  AdamState adam_wa(p.w_a.size()), adam_ba(p.b_a.size());
  AdamState adam_wl(p.w_l.size()), adam_bl(p.b_l.size());
  AdamState adam_we(p.w_e.size()), adam_be(1);

  Rng shuffle_rng(hash_combine(cfg.seed, fnv1a64("epoch-shuffle")));
  std::vector<std::size_t> order(train.size());
  std::iota(order.begin(), order.end(), std::size_t{0});

  std::size_t step = 0;
  for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
    seeded_shuffle(order, shuffle_rng);
    double epoch_loss = 0.0;
    std::vector<PooledExample> batch;
    batch.reserve(cfg.batch_size);
    for (std::size_t pos = 0; pos < order.size();) {
      batch.clear();
      for (; batch.size() < cfg.batch_size && pos < order.size(); ++pos)
        batch.push_back(train[order[pos]]);

      Gradients g = gradients(batch, p);
      ++step;
      apply_update(p.w_a, g.w_a, &adam_wa, step, cfg);
      apply_update(p.b_a, g.b_a, &adam_ba, step, cfg);
      apply_update(p.w_l, g.w_l, &adam_wl, step, cfg);
      apply_update(p.b_l, g.b_l, &adam_bl, step, cfg);
      apply_update(p.w_e, g.w_e, &adam_we, step, cfg);
      std::vector<double> be{p.b_e}, gbe{g.b_e};
      apply_update(be, gbe, &adam_be, step, cfg);
      p.b_e = be[0];
    }

    for (const auto& ex : train)
      epoch_loss += loss(forward_pooled(ex.acoustic, ex.linguistic, p), ex.label);
    epoch_loss /= static_cast<double>(train.size());

    EpochStats stats;
    stats.epoch = epoch;
    stats.train_loss = epoch_loss;
    if (val != nullptr && !val->empty()) {
      std::size_t correct = 0;
      for (const auto& ex : *val) {
        double e = forward_pooled(ex.acoustic, ex.linguistic, p);
        int predicted = e >= 0.5 ? 1 : 0;
        if (predicted == ex.label) ++correct;
      }
      stats.val_accuracy =
          static_cast<double>(correct) / static_cast<double>(val->size());
      stats.val_cer = 100.0 * (1.0 - *stats.val_accuracy);
    }
    result.history.push_back(stats);
  }
  return result;
}

std::vector<Prediction> predict_pooled(std::span<const PooledExample> examples,
                                       const HeadParams& p, double threshold) {
  std::vector<Prediction> out;
  out.reserve(examples.size());
  for (const auto& ex : examples) {
    double e = forward_pooled(ex.acoustic, ex.linguistic, p);
    out.push_back(Prediction{ex.id, e, e >= threshold ? 1 : 0});
  }
  return out;
}

namespace {

std::string feature_file_stem(const std::string& id) {
  std::string stem = id;
  std::replace(stem.begin(), stem.end(), ':', '_');
  return stem;
}

encoders::FeatureSequence resolve_one(const dataset::EntailmentExample& ex,
                                      const encoders::EncoderSpec& spec,
                                      bool acoustic_side) {
  using encoders::EncoderKind;
  switch (spec.kind) {
    case EncoderKind::ToyAcoustic: {
      if (ex.audio_ref.path.empty())
        throw Error(Errc::EncoderResolution,
                    "example " + ex.id + " has no audio path");
      encoders::AudioSegment seg;
      try {
        seg = encoders::load_audio(ex.audio_ref.path, ex.audio_ref.start_s,
                                   ex.audio_ref.end_s);
      } catch (const Error& err) {
        if (err.code() == Errc::Io)
          throw Error(Errc::EncoderResolution,
                      "example " + ex.id + ": " + err.what());
        throw;
      }
      return encoders::toy_acoustic(seg, spec.dim);
    }
    case EncoderKind::ToyLinguistic: {
      auto tokens = textnorm::normalize(ex.hyp_text);
      if (tokens.empty()) {
        // Empty hypotheses are legal for error examples; encode them with a
        // sentinel norm no real word can produce.
        tokens.push_back(textnorm::Token{"", "\x01empty", 0});
      }
      return encoders::toy_linguistic(tokens, spec.dim);
    }
    case EncoderKind::FileAcoustic:
    case EncoderKind::FileLinguistic: {
      auto dir_it = spec.params.find("dir");
      if (dir_it == spec.params.end())
        throw Error(Errc::EncoderResolution,
                    "file encoder needs a 'dir' param");
      std::string suffix = acoustic_side ? ".a.feat" : ".l.feat";
      if (auto it = spec.params.find("suffix"); it != spec.params.end())
        suffix = it->second;
      std::filesystem::path path =
          std::filesystem::path(dir_it->second) /
          (feature_file_stem(ex.id) + suffix);
      encoders::FeatureSequence seq;
      try {
        seq = encoders::read_features(path);
      } catch (const Error& err) {
        if (err.code() == Errc::Io)
          throw Error(Errc::EncoderResolution,
                      "example " + ex.id + ": " + err.what());
        throw;
      }
      if (seq.dim != spec.dim)
        throw Error(Errc::DimMismatch,
                    path.string() + ": feature dim " + std::to_string(seq.dim) +
                        " != spec dim " + std::to_string(spec.dim));
      return seq;
    }
  }
  throw Error(Errc::Internal, "unhandled encoder kind");
}

}  // namespace

std::vector<PooledExample> resolve_pooled(
    std::span<const dataset::EntailmentExample> examples,
    const EncoderPair& enc, dataset::LabelField target) {
  std::vector<PooledExample> out(examples.size());
  parallel_for(examples.size(), [&](std::size_t i) {
    const auto& ex = examples[i];
    PooledExample pe;
    pe.id = ex.id;
    pe.label = dataset::example_label(ex, target);
    pe.acoustic = mean_pool(resolve_one(ex, enc.acoustic, true));
    pe.linguistic = mean_pool(resolve_one(ex, enc.linguistic, false));
    out[i] = std::move(pe);
  });
  return out;
}

TrainResult train(const dataset::DatasetManifest& manifest,
                  const dataset::DatasetManifest* val_manifest,
                  const EncoderPair& enc, dataset::LabelField target,
                  const HeadDims& dims, const TrainConfig& cfg) {
  if (manifest.examples.empty())
    throw Error(Errc::EmptyInput, "training manifest is empty");
  auto train_pool = resolve_pooled(manifest.examples, enc, target);
  std::vector<PooledExample> val_pool;
  if (val_manifest != nullptr)
    val_pool = resolve_pooled(val_manifest->examples, enc, target);
  return train_pooled(train_pool, val_manifest ? &val_pool : nullptr, dims, cfg);
}

std::vector<Prediction> predict(const dataset::DatasetManifest& manifest,
                                const EncoderPair& enc, const HeadParams& p,
                                dataset::LabelField target, double threshold) {
  auto pool = resolve_pooled(manifest.examples, enc, target);
  return predict_pooled(pool, p, threshold);
}

namespace {

json matrix_to_json(const std::vector<double>& v, std::size_t rows,
                    std::size_t cols) {
  json out = json::array();
  for (std::size_t r = 0; r < rows; ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < cols; ++c) row.push_back(v[r * cols + c]);
    out.push_back(row);
  }
  return out;
}

std::vector<double> matrix_from_json(const json& j, std::size_t rows,
                                     std::size_t cols, const char* name) {
  if (!j.is_array() || j.size() != rows)
    throw Error(Errc::DimMismatch, std::string(name) + " row count mismatch");
  std::vector<double> out;
  out.reserve(rows * cols);
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != cols)
      throw Error(Errc::DimMismatch, std::string(name) + " column count mismatch");
    for (const auto& x : row) out.push_back(x.get<double>());
  }
  return out;
}

}  // namespace

void save_params(const HeadParams& p, const std::filesystem::path& path) {
  p.validate();
  json j;
  j["format"] = "awhead-1";
  j["dims"] = json{{"d_a", p.dims.d_a},
                   {"d_l", p.dims.d_l},
                   {"d_proj", p.dims.d_proj}};
  j["W_a"] = matrix_to_json(p.w_a, p.dims.d_proj, p.dims.d_a);
  j["b_a"] = p.b_a;
  j["W_l"] = matrix_to_json(p.w_l, p.dims.d_proj, p.dims.d_l);
  j["b_l"] = p.b_l;
  j["W_e"] = p.w_e;
  j["b_e"] = p.b_e;
  j["seed"] = p.seed;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::Io, "cannot write checkpoint " + path.string());
  out << j.dump(2) << "\n";
  if (!out) throw Error(Errc::Io, "short write to " + path.string());
}

HeadParams load_params(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot open checkpoint " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& ex) {
    throw Error(Errc::Schema, "checkpoint " + path.string() + ": " + ex.what());
  }
  HeadParams p;
  try {
    if (j.at("format").get<std::string>() != "awhead-1")
      throw Error(Errc::Schema, "unsupported checkpoint format");
    const json& dims = j.at("dims");
    p.dims.d_a = dims.at("d_a").get<std::size_t>();
    p.dims.d_l = dims.at("d_l").get<std::size_t>();
    p.dims.d_proj = dims.at("d_proj").get<std::size_t>();
    p.w_a = matrix_from_json(j.at("W_a"), p.dims.d_proj, p.dims.d_a, "W_a");
    p.b_a = j.at("b_a").get<std::vector<double>>();
    p.w_l = matrix_from_json(j.at("W_l"), p.dims.d_proj, p.dims.d_l, "W_l");
    p.b_l = j.at("b_l").get<std::vector<double>>();
    p.w_e = j.at("W_e").get<std::vector<double>>();
    p.b_e = j.at("b_e").get<double>();
    p.seed = j.value("seed", std::uint64_t{0});
  } catch (const json::exception& ex) {
    throw Error(Errc::Schema, "checkpoint " + path.string() + ": " + ex.what());
  }
  p.validate();
  return p;
}

}  // namespace asrward::entail
