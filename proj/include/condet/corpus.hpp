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

#ifndef CONDET_CORPUS_HPP_
#define CONDET_CORPUS_HPP_

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "condet/provenance.hpp"

namespace condet {

// Bijective mapping between terms and dense token ids [0, V).
class Vocabulary {
 public:
  Vocabulary() = default;

  // Builds from a term list; ids follow list order. Terms must be unique
  // and non-empty (DataError otherwise).
  static Vocabulary from_terms(std::vector<std::string> terms);

  int size() const { return static_cast<int>(terms_.size()); }
  std::optional<int> id_of(std::string_view term) const;
  const std::string& term(int id) const;  // DataError on out-of-range id
  const std::vector<std::string>& terms() const { return terms_; }

 private:
  std::vector<std::string> terms_;
  std::unordered_map<std::string, int> index_;
};

// One text segment after encoding. Token order is preserved; a segment
// whose tokens were all filtered away stays in the corpus with an empty
// token list so downstream results remain total over segment ids.
struct EncodedSegment {
  std::string id;
  std::vector<int> tokens;
};

struct IngestStats {
  long long segments = 0;
  long long empty_segments = 0;
  long long tokens_seen = 0;
  long long tokens_stopword = 0;
  long long tokens_below_min_df = 0;
  long long tokens_kept = 0;
  int vocabulary_size = 0;
};

class EncodedCorpus {
 public:
  EncodedCorpus() = default;

  const Vocabulary& vocabulary() const { return vocab_; }
  const std::vector<EncodedSegment>& segments() const { return segments_; }
  const EncodedSegment& segment(int pos) const;

  int num_segments() const { return static_cast<int>(segments_.size()); }
  int vocab_size() const { return vocab_.size(); }
  long long total_tokens() const;

  // Position of a segment id in storage order.
  std::optional<int> segment_pos(std::string_view id) const;

  friend EncodedCorpus make_corpus(std::vector<std::string> vocab_terms,
                                   std::vector<EncodedSegment> segments);

 private:
  Vocabulary vocab_;
  std::vector<EncodedSegment> segments_;
  std::unordered_map<std::string, int> pos_by_id_;
};

// Validates ids are unique (error names the offender) and every token id is
// inside [0, V), then assembles the corpus.
EncodedCorpus make_corpus(std::vector<std::string> vocab_terms,
                          std::vector<EncodedSegment> segments);

struct IngestOptions {
  std::set<std::string> stopwords;
  int min_df = 1;  // keep terms appearing in at least this many segments
};

// Reads a segment file: one JSON object per line, either
//   {"id": "...", "tokens": ["...", ...]}   already tokenized, or
//   {"id": "...", "text": "..."}            raw text, whitespace-tokenized.
// A file must use one style throughout. Tokens are lowercased (ASCII),
// stopwords are dropped, then terms under the min_df document-frequency
// floor are dropped. Errors carry the 1-based line number.
EncodedCorpus ingest_file(const std::filesystem::path& path,
                          const IngestOptions& options,
                          IngestStats* stats = nullptr);

// Stopword file: one word per line, '#' starts a comment, blank lines
// ignored. Words are lowercased on load.
std::set<std::string> load_stopwords(const std::filesystem::path& path);

// Token id for a (lowercased) query word; empty when out of vocabulary.
std::optional<int> keyword_lookup(const EncodedCorpus& corpus,
                                  std::string_view word);

// True when the token id occurs in the segment at this storage position.
bool keyword_occurs(const EncodedCorpus& corpus, int token_id,
                    int segment_pos);

// Deterministic serialization: same corpus, same bytes.
std::string corpus_to_json(const EncodedCorpus& corpus,
                           const Provenance* provenance = nullptr);
void save_corpus(const EncodedCorpus& corpus,
                 const std::filesystem::path& path,
                 const Provenance* provenance = nullptr);
EncodedCorpus load_corpus(const std::filesystem::path& path);

// ASCII lowercase fold; bytes outside A-Z pass through.
std::string fold_case(std::string_view s);

// Lowercased whitespace tokenization for raw text records.
std::vector<std::string> whitespace_tokenize(std::string_view text);

}  // namespace condet

#endif  // CONDET_CORPUS_HPP_
