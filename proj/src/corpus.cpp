// Copyright 2026 The condet authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "condet/corpus.hpp"

#include <cassert>
#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "condet/error.hpp"
#include "condet/version.hpp"

namespace condet {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw DataError("cannot open file: " + path.string());
  }
  return in;
}

}  // namespace

Vocabulary Vocabulary::from_terms(std::vector<std::string> terms) {
  Vocabulary v;
  v.terms_ = std::move(terms);
  v.index_.reserve(v.terms_.size());
  for (std::size_t i = 0; i < v.terms_.size(); ++i) {
    if (v.terms_[i].empty()) {
      throw DataError("vocabulary contains an empty term at id " +
                      std::to_string(i));
    }
    auto [it, inserted] = v.index_.emplace(v.terms_[i], static_cast<int>(i));
    if (!inserted) {
      throw DataError("vocabulary contains duplicate term \"" + v.terms_[i] +
                      "\"");
    }
  }
  return v;
}

std::optional<int> Vocabulary::id_of(std::string_view term) const {
  auto it = index_.find(std::string(term));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const std::string& Vocabulary::term(int id) const {
  if (id < 0 || id >= size()) {
    throw DataError("token id out of range: " + std::to_string(id));
  }
  return terms_[static_cast<std::size_t>(id)];
}

const EncodedSegment& EncodedCorpus::segment(int pos) const {
  assert(pos >= 0 && pos < num_segments());
  return segments_[static_cast<std::size_t>(pos)];
}

long long EncodedCorpus::total_tokens() const {
  long long n = 0;
  for (const auto& s : segments_) n += static_cast<long long>(s.tokens.size());
  return n;
}

std::optional<int> EncodedCorpus::segment_pos(std::string_view id) const {
  auto it = pos_by_id_.find(std::string(id));
  if (it == pos_by_id_.end()) return std::nullopt;
  return it->second;
}

EncodedCorpus make_corpus(std::vector<std::string> vocab_terms,
                          std::vector<EncodedSegment> segments) {
  EncodedCorpus c;
  c.vocab_ = Vocabulary::from_terms(std::move(vocab_terms));
  c.segments_ = std::move(segments);
  c.pos_by_id_.reserve(c.segments_.size());
  const int v = c.vocab_.size();
  for (std::size_t i = 0; i < c.segments_.size(); ++i) {
    const EncodedSegment& s = c.segments_[i];
    if (s.id.empty()) {
      throw DataError("segment at position " + std::to_string(i) +
                      " has an empty id");
    }
    auto [it, inserted] = c.pos_by_id_.emplace(s.id, static_cast<int>(i));
    if (!inserted) {
      throw DataError("duplicate segment id \"" + s.id + "\"");
    }
    for (int t : s.tokens) {
      if (t < 0 || t >= v) {
        throw DataError("segment \"" + s.id + "\" has token id " +
                        std::to_string(t) + " outside vocabulary of size " +
                        std::to_string(v));
      }
    }
  }
  return c;
}

std::string fold_case(std::string_view s) {
  std::string out(s);
  for (char& ch : out) {
    if (ch >= 'A' && ch <= 'Z') ch = static_cast<char>(ch - 'A' + 'a');
  }
  return out;
}

std::vector<std::string> whitespace_tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() &&
           std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
    }
    std::size_t start = i;
    while (i < text.size() &&
           !std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
    }
    if (i > start) out.push_back(fold_case(text.substr(start, i - start)));
  }
  return out;
}

std::set<std::string> load_stopwords(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  std::set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string word = trim(line);
    if (!word.empty()) words.insert(fold_case(word));
  }
  return words;
}

EncodedCorpus ingest_file(const std::filesystem::path& path,
                          const IngestOptions& options, IngestStats* stats) {
  if (options.min_df < 1) {
    throw UsageError("min_df must be at least 1, got " +
                     std::to_string(options.min_df));
  }
  std::ifstream in = open_input(path);

  enum class Style { kUnknown, kTokens, kText };
  Style style = Style::kUnknown;

  struct RawSegment {
    std::string id;
    std::vector<std::string> tokens;  // folded, stopwords already removed
  };
  std::vector<RawSegment> raw;
  std::unordered_map<std::string, int> doc_freq;
  IngestStats local;

  std::string line;
  long long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const std::string where = "corpus line " + std::to_string(line_no);

    nlohmann::json rec;
    try {
      rec = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw DataError(where + ": malformed JSON: " + e.what());
    }
    if (!rec.is_object()) {
      throw DataError(where + ": expected a JSON object");
    }
    if (!rec.contains("id") || !rec["id"].is_string()) {
      throw DataError(where + ": missing string field \"id\"");
    }
    const bool has_tokens = rec.contains("tokens");
    const bool has_text = rec.contains("text");
    if (has_tokens == has_text) {
      throw DataError(where +
                      ": record needs exactly one of \"tokens\" or \"text\"");
    }
    const Style this_style = has_tokens ? Style::kTokens : Style::kText;
    if (style == Style::kUnknown) {
      style = this_style;
    } else if (style != this_style) {
      throw DataError(where +
                      ": mixed \"tokens\" and \"text\" records in one file");
    }

    RawSegment seg;
    seg.id = rec["id"].get<std::string>();
    if (seg.id.empty()) {
      throw DataError(where + ": empty segment id");
    }

    std::vector<std::string> folded;
    if (has_tokens) {
      if (!rec["tokens"].is_array()) {
        throw DataError(where + ": \"tokens\" must be an array of strings");
      }
      folded.reserve(rec["tokens"].size());
      for (const auto& t : rec["tokens"]) {
        if (!t.is_string()) {
          throw DataError(where + ": \"tokens\" must be an array of strings");
        }
        folded.push_back(fold_case(t.get<std::string>()));
      }
    } else {
      if (!rec["text"].is_string()) {
        throw DataError(where + ": \"text\" must be a string");
      }
      folded = whitespace_tokenize(rec["text"].get<std::string>());
    }

    local.tokens_seen += static_cast<long long>(folded.size());
    for (std::string& tok : folded) {
      if (options.stopwords.count(tok)) {
        ++local.tokens_stopword;
      } else {
        seg.tokens.push_back(std::move(tok));
      }
    }
    raw.push_back(std::move(seg));
  }

  if (raw.empty()) {
    throw DataError("corpus file contains no segments: " + path.string());
  }

  // Document frequency over stopword-filtered terms.
  for (const RawSegment& seg : raw) {
    std::set<std::string> distinct(seg.tokens.begin(), seg.tokens.end());
    for (const std::string& t : distinct) ++doc_freq[t];
  }

  // Vocabulary ids follow first occurrence among kept tokens, which makes
  // ingestion deterministic for a given file and option set.
  std::vector<std::string> vocab_terms;
  std::unordered_map<std::string, int> vocab_index;
  std::vector<EncodedSegment> encoded;
  encoded.reserve(raw.size());
  for (const RawSegment& seg : raw) {
    EncodedSegment enc;
    enc.id = seg.id;
    for (const std::string& tok : seg.tokens) {
      if (doc_freq[tok] < options.min_df) {
        ++local.tokens_below_min_df;
        continue;
      }
      auto it = vocab_index.find(tok);
      if (it == vocab_index.end()) {
        it = vocab_index.emplace(tok, static_cast<int>(vocab_terms.size()))
                 .first;
        vocab_terms.push_back(tok);
      }
      enc.tokens.push_back(it->second);
      ++local.tokens_kept;
    }
    if (enc.tokens.empty()) ++local.empty_segments;
    encoded.push_back(std::move(enc));
  }

  local.segments = static_cast<long long>(encoded.size());
  local.vocabulary_size = static_cast<int>(vocab_terms.size());
  if (stats) *stats = local;
  return make_corpus(std::move(vocab_terms), std::move(encoded));
}

std::optional<int> keyword_lookup(const EncodedCorpus& corpus,
                                  std::string_view word) {
  return corpus.vocabulary().id_of(fold_case(word));
}

bool keyword_occurs(const EncodedCorpus& corpus, int token_id,
                    int segment_pos) {
  for (int t : corpus.segment(segment_pos).tokens) {
    if (t == token_id) return true;
  }
  return false;
}

std::string corpus_to_json(const EncodedCorpus& corpus,
                           const Provenance* provenance) {
  ordered_json j;
  j["version"] = 1;
  if (provenance) {
    j["provenance"] = {{"tool", kToolName},
                       {"tool_version", kToolVersion},
                       {"config_hash", provenance->config_hash},
                       {"seed", provenance->seed}};
  }
  j["vocabulary"] = corpus.vocabulary().terms();
  ordered_json segs = ordered_json::array();
  for (const EncodedSegment& s : corpus.segments()) {
    segs.push_back({{"id", s.id}, {"tokens", s.tokens}});
  }
  j["segments"] = std::move(segs);
  return j.dump() + "\n";
}

void save_corpus(const EncodedCorpus& corpus,
                 const std::filesystem::path& path,
                 const Provenance* provenance) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw DataError("cannot write file: " + path.string());
  }
  out << corpus_to_json(corpus, provenance);
}

EncodedCorpus load_corpus(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DataError("corpus file " + path.string() + ": " + e.what());
  }
  try {
    if (!j.is_object() || j.value("version", 0) != 1) {
      throw DataError("corpus file " + path.string() +
                      ": missing or unsupported version");
    }
    std::vector<std::string> vocab =
        j.at("vocabulary").get<std::vector<std::string>>();
    std::vector<EncodedSegment> segments;
    for (const auto& s : j.at("segments")) {
      EncodedSegment seg;
      seg.id = s.at("id").get<std::string>();
      seg.tokens = s.at("tokens").get<std::vector<int>>();
      segments.push_back(std::move(seg));
    }
    return make_corpus(std::move(vocab), std::move(segments));
  } catch (const nlohmann::json::exception& e) {
    throw DataError("corpus file " + path.string() + ": " + e.what());
  }
}

}  // namespace condet
