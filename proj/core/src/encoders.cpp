// Copyright 2026 the asr-ward authors
// SPDX-License-Identifier: Apache-2.0

#include "asrward/encoders.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "asrward/errors.hpp"
#include "asrward/rng.hpp"

namespace asrward::encoders {

const char* to_string(EncoderKind k) {
  switch (k) {
    case EncoderKind::FileAcoustic: return "file_acoustic";
    case EncoderKind::FileLinguistic: return "file_linguistic";
    case EncoderKind::ToyAcoustic: return "toy_acoustic";
    case EncoderKind::ToyLinguistic: return "toy_linguistic";
  }
  return "toy_acoustic";
}

std::optional<EncoderKind> encoder_kind_from_string(std::string_view s) {
  if (s == "file_acoustic") return EncoderKind::FileAcoustic;
  if (s == "file_linguistic") return EncoderKind::FileLinguistic;
  if (s == "toy_acoustic") return EncoderKind::ToyAcoustic;
  if (s == "toy_linguistic") return EncoderKind::ToyLinguistic;
  return std::nullopt;
}

namespace {

struct WavData {
  std::vector<std::int16_t> samples;
  std::uint32_t sample_rate = 0;
};

std::uint32_t read_u32le(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint16_t read_u16le(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] |
                                    (static_cast<std::uint16_t>(p[1]) << 8));
}

WavData read_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot open audio " + path.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0)
    throw Error(Errc::Format, path.string() + " is not a RIFF/WAVE file");

  WavData wav;
  bool have_fmt = false;
  std::uint16_t channels = 0, bits = 0, format_tag = 0;
  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    char chunk_id[5] = {0};
    std::memcpy(chunk_id, bytes.data() + pos, 4);
    std::uint32_t chunk_size = read_u32le(bytes.data() + pos + 4);
    std::size_t body = pos + 8;
    if (body + chunk_size > bytes.size())
      throw Error(Errc::Format, path.string() + ": truncated chunk " + chunk_id);
    if (std::memcmp(chunk_id, "fmt ", 4) == 0) {
      if (chunk_size < 16)
        throw Error(Errc::Format, path.string() + ": short fmt chunk");
      format_tag = read_u16le(bytes.data() + body);
      channels = read_u16le(bytes.data() + body + 2);
      wav.sample_rate = read_u32le(bytes.data() + body + 4);
      bits = read_u16le(bytes.data() + body + 14);
      have_fmt = true;
    } else if (std::memcmp(chunk_id, "data", 4) == 0) {
      if (!have_fmt)
        throw Error(Errc::Format, path.string() + ": data before fmt");
      if (format_tag != 1)
        throw Error(Errc::Format, path.string() + ": not PCM");
      if (channels != 1)
        throw Error(Errc::Format, path.string() + ": not mono");
      if (bits != 16)
        throw Error(Errc::Format, path.string() + ": not 16-bit");
      std::size_t count = chunk_size / 2;
      wav.samples.resize(count);
      for (std::size_t i = 0; i < count; ++i) {
        std::uint16_t u = read_u16le(bytes.data() + body + 2 * i);
        wav.samples[i] = static_cast<std::int16_t>(u);
      }
      return wav;
    }
    pos = body + chunk_size + (chunk_size & 1);  // chunks are word-aligned
  }
  throw Error(Errc::Format, path.string() + ": no data chunk");
}

}  // namespace

AudioSegment load_audio(const std::filesystem::path& path, double start_s,
                        double end_s) {
  if (start_s < 0.0 || !(end_s > start_s))
    throw Error(Errc::Range, "need 0 <= start_s < end_s");
  WavData wav = read_wav(path);
  if (wav.sample_rate == 0)
    throw Error(Errc::Format, path.string() + ": zero sample rate");

  auto to_index = [&](double t) {
    return static_cast<long long>(std::llround(t * wav.sample_rate));
  };
  long long begin = to_index(start_s);
  long long end = to_index(end_s);
  long long n = static_cast<long long>(wav.samples.size());
  if (end > n)
    throw Error(Errc::Range, path.string() + ": span ends at " +
                                 std::to_string(end_s) + "s beyond file");
  if (begin >= end) throw Error(Errc::Range, "empty sample span");

  AudioSegment seg;
  seg.sample_rate = static_cast<int>(wav.sample_rate);
  seg.path = path.string();
  seg.start_s = start_s;
  seg.end_s = end_s;
  seg.samples.resize(static_cast<std::size_t>(end - begin));
  for (long long i = begin; i < end; ++i)
    seg.samples[static_cast<std::size_t>(i - begin)] =
        static_cast<double>(wav.samples[static_cast<std::size_t>(i)]) / 32768.0;

  double mean = 0.0;
  for (double v : seg.samples) mean += v;
  mean /= static_cast<double>(seg.samples.size());
  double var = 0.0;
  for (double v : seg.samples) var += (v - mean) * (v - mean);
  var /= static_cast<double>(seg.samples.size());
  if (var < 1e-12) {
    std::fill(seg.samples.begin(), seg.samples.end(), 0.0);
    seg.silent = true;
    return seg;
  }
  double inv_std = 1.0 / std::sqrt(var);
  for (double& v : seg.samples) v = (v - mean) * inv_std;
  return seg;
}

namespace {

// Fixed analysis bands (Hz) for the toy acoustic features.
constexpr std::array<double, 8> kBandsHz = {125.0,  250.0,  500.0,  1000.0,
                                            1500.0, 2000.0, 3000.0, 4000.0};
constexpr double kLogFloor = 1e-8;

double goertzel_power(std::span<const double> x, double freq_hz, double rate) {
  double w = 2.0 * M_PI * freq_hz / rate;
  double coeff = 2.0 * std::cos(w);
  double s0 = 0.0, s1 = 0.0, s2 = 0.0;
  for (double v : x) {
    s0 = v + coeff * s1 - s2;
    s2 = s1;
    s1 = s0;
  }
  double power = s1 * s1 + s2 * s2 - coeff * s1 * s2;
  double n = static_cast<double>(x.size());
  return power / (n * n);
}

}  // namespace

FeatureSequence toy_acoustic(const AudioSegment& seg, std::size_t dim,
                             double frame_ms, double hop_ms) {
  if (dim < kToyAcousticBaseDim)
    throw Error(Errc::DimMismatch,
                "toy acoustic dim must be >= " +
                    std::to_string(kToyAcousticBaseDim));
  const double rate = static_cast<double>(seg.sample_rate);
  const std::size_t frame_len =
      static_cast<std::size_t>(std::llround(frame_ms * rate / 1000.0));
  const std::size_t hop =
      static_cast<std::size_t>(std::llround(hop_ms * rate / 1000.0));
  if (frame_len == 0 || hop == 0)
    throw Error(Errc::Range, "frame/hop too small for sample rate");
  if (seg.samples.size() < frame_len)
    throw Error(Errc::TooShort, "audio segment shorter than one frame");

  const std::size_t n_frames = (seg.samples.size() - frame_len) / hop + 1;
  FeatureSequence out;
  out.dim = dim;
  out.values.assign(n_frames * dim, 0.0);

  for (std::size_t f = 0; f < n_frames; ++f) {
    std::span<const double> frame{seg.samples.data() + f * hop, frame_len};
    double* dst = out.values.data() + f * dim;

    double energy = 0.0;
    for (double v : frame) energy += v * v;
    dst[0] = std::log(energy + kLogFloor);

    std::size_t crossings = 0;
    for (std::size_t i = 1; i < frame.size(); ++i) {
      bool a = frame[i - 1] >= 0.0;
      bool b = frame[i] >= 0.0;
      if (a != b) ++crossings;
    }
    dst[1] = static_cast<double>(crossings) /
             static_cast<double>(frame.size() - 1);

    std::array<double, 8> band_power{};
    double power_sum = 0.0, weighted = 0.0;
    for (std::size_t b = 0; b < kBandsHz.size(); ++b) {
      band_power[b] = goertzel_power(frame, kBandsHz[b], rate);
      power_sum += band_power[b];
      weighted += band_power[b] * kBandsHz[b];
    }
    dst[2] = power_sum > 0.0 ? weighted / power_sum : 0.0;
    for (std::size_t b = 0; b < band_power.size(); ++b)
      dst[3 + b] = std::log(band_power[b] + kLogFloor);
  }
  return out;
}

FeatureSequence toy_linguistic(std::span<const textnorm::Token> tokens,
                               std::size_t dim) {
  if (tokens.empty())
    throw Error(Errc::EmptyInput, "toy linguistic encoder needs tokens");
  if (dim < 8)
    throw Error(Errc::DimMismatch, "toy linguistic dim must be >= 8");

  FeatureSequence out;
  out.dim = dim;
  out.values.reserve(tokens.size() * dim);
  for (const auto& tok : tokens) {
    Rng rng(fnv1a64(tok.norm));
    std::vector<double> v(dim);
    double norm_sq = 0.0;
    for (double& x : v) {
      x = rng.uniform_symmetric(1.0);
      norm_sq += x * x;
    }
    double inv = norm_sq > 0.0 ? 1.0 / std::sqrt(norm_sq) : 0.0;
    for (double& x : v) x *= inv;
    if (inv == 0.0) v[0] = 1.0;  // unreachable in practice; keep unit norm
    out.values.insert(out.values.end(), v.begin(), v.end());
  }
  return out;
}

namespace {

constexpr char kFeatMagic[8] = {'A', 'W', 'F', 'E', 'A', 'T', '1', '\0'};

void put_u32le(std::string& out, std::uint32_t v) {
  out.push_back(static_cast<char>(v & 0xff));
  out.push_back(static_cast<char>((v >> 8) & 0xff));
  out.push_back(static_cast<char>((v >> 16) & 0xff));
  out.push_back(static_cast<char>((v >> 24) & 0xff));
}

}  // namespace

void write_features(const FeatureSequence& seq,
                    const std::filesystem::path& path) {
  if (seq.dim == 0) throw Error(Errc::DimMismatch, "feature dim must be >= 1");
  std::string out;
  out.reserve(16 + 4 * seq.values.size());
  out.append(kFeatMagic, sizeof kFeatMagic);
  put_u32le(out, static_cast<std::uint32_t>(seq.dim));
  put_u32le(out, static_cast<std::uint32_t>(seq.frames()));
  for (double v : seq.values) {
    float f = static_cast<float>(v);
    std::uint32_t bits = std::bit_cast<std::uint32_t>(f);
    put_u32le(out, bits);
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(Errc::Io, "cannot write features " + path.string());
  file.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!file) throw Error(Errc::Io, "short write to " + path.string());
}

FeatureSequence read_features(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot open features " + path.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  if (bytes.size() < 16 ||
      std::memcmp(bytes.data(), kFeatMagic, sizeof kFeatMagic) != 0)
    throw Error(Errc::Format, path.string() + ": bad feature file magic");
  std::uint32_t dim = read_u32le(bytes.data() + 8);
  std::uint32_t count = read_u32le(bytes.data() + 12);
  if (dim == 0) throw Error(Errc::Format, path.string() + ": zero dim");
  std::size_t expected = 16 + 4ull * dim * count;
  if (bytes.size() < expected)
    throw Error(Errc::Format, path.string() + ": truncated payload");
  if (bytes.size() > expected)
    throw Error(Errc::DimMismatch,
                path.string() + ": payload size disagrees with header");

  FeatureSequence seq;
  seq.dim = dim;
  seq.values.resize(static_cast<std::size_t>(dim) * count);
  for (std::size_t i = 0; i < seq.values.size(); ++i) {
    std::uint32_t bits = read_u32le(bytes.data() + 16 + 4 * i);
    seq.values[i] = static_cast<double>(std::bit_cast<float>(bits));
  }
  return seq;
}

}  // namespace asrward::encoders
