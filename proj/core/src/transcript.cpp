// Copyright 2026 the asr-ward authors
// SPDX-License-Identifier: Apache-2.0

#include "asrward/transcript.hpp"

#include <fstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "asrward/errors.hpp"

namespace asrward::transcript {

using nlohmann::json;

namespace {

Conversation conversation_from_json(const json& j, const std::string& origin) {
  if (!j.is_object())
    throw Error(Errc::Format, origin + ": conversation is not an object");
  Conversation c;
  try {
    c.id = j.at("conversation_id").get<std::string>();
    c.audio_path = j.value("audio_path", std::string{});
    for (const auto& u : j.at("utterances")) {
      Utterance utt;
      utt.speaker = u.value("speaker", std::string{});
      utt.start_s = u.at("start_s").get<double>();
      utt.end_s = u.at("end_s").get<double>();
      utt.text = u.at("text").get<std::string>();
      if (!(utt.end_s > utt.start_s))
        throw Error(Errc::Format, origin + ": utterance in " + c.id +
                                      " has end_s <= start_s");
      c.utterances.push_back(std::move(utt));
    }
  } catch (const json::exception& ex) {
    throw Error(Errc::Format, origin + ": " + ex.what());
  }
  if (c.id.empty())
    throw Error(Errc::Format, origin + ": empty conversation_id");
  return c;
}

json conversation_to_json(const Conversation& c) {
  json utts = json::array();
  for (const auto& u : c.utterances) {
    utts.push_back(json{{"speaker", u.speaker},
                        {"start_s", u.start_s},
                        {"end_s", u.end_s},
                        {"text", u.text}});
  }
  json j{{"conversation_id", c.id}, {"utterances", utts}};
  if (!c.audio_path.empty()) j["audio_path"] = c.audio_path;
  return j;
}

}  // namespace

std::vector<Conversation> parse_conversations(const std::string& text,
                                              const std::string& origin) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& ex) {
    throw Error(Errc::Format, origin + ": " + ex.what());
  }
  std::vector<Conversation> out;
  if (j.is_array()) {
    for (const auto& item : j) out.push_back(conversation_from_json(item, origin));
  } else {
    out.push_back(conversation_from_json(j, origin));
  }
  std::unordered_set<std::string> ids;
  for (const auto& c : out) {
    if (!ids.insert(c.id).second)
      throw Error(Errc::Format, origin + ": duplicate conversation_id " + c.id);
  }
  return out;
}

std::vector<Conversation> read_conversations(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot open transcript " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return parse_conversations(text, path.string());
}

void write_conversations(const std::vector<Conversation>& conversations,
                         const std::filesystem::path& path) {
  json arr = json::array();
  for (const auto& c : conversations) arr.push_back(conversation_to_json(c));
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::Io, "cannot write transcript " + path.string());
  out << arr.dump(2) << "\n";
  if (!out) throw Error(Errc::Io, "short write to " + path.string());
}

TokenizedConversation build_segments(const Conversation& conversation) {
  TokenizedConversation out;
  for (const auto& utt : conversation.utterances) {
    auto sentences = textnorm::sentence_split(utt.text);
    std::vector<std::vector<textnorm::Token>> sentence_tokens;
    std::size_t total_tokens = 0;
    for (const auto& s : sentences) {
      sentence_tokens.push_back(textnorm::normalize(s));
      total_tokens += sentence_tokens.back().size();
    }
    if (total_tokens == 0) continue;

    double dur = utt.end_s - utt.start_s;
    std::size_t consumed = 0;
    for (std::size_t s = 0; s < sentences.size(); ++s) {
      auto& tokens = sentence_tokens[s];
      if (tokens.empty()) continue;
      textnorm::Segment seg;
      seg.speaker = utt.speaker;
      seg.start_s = utt.start_s + dur * static_cast<double>(consumed) /
                                      static_cast<double>(total_tokens);
      consumed += tokens.size();
      seg.end_s = utt.start_s + dur * static_cast<double>(consumed) /
                                    static_cast<double>(total_tokens);
      seg.tokens = tokens;
      out.stream.insert(out.stream.end(), tokens.begin(), tokens.end());
      out.segments.push_back(std::move(seg));
      out.segment_texts.push_back(sentences[s]);
    }
  }
  return out;
}

}  // namespace asrward::transcript
