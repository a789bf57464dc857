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

#ifndef CONDET_DETECT_HPP_
#define CONDET_DETECT_HPP_

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "condet/corpus.hpp"
#include "condet/gibbs.hpp"
#include "condet/model.hpp"

namespace condet {

// How a concept keyword is mapped to topics.
//   most_likely:   the single topic giving the word its highest probability
//   highest_rank:  the topic where the word's rank is best
//   top_n:         every topic ranking the word within the first n
//   concrete:      every topic holding at least one sampled token of the
//                  word (collapsed-sampler runs only)
enum class Heuristic {
  kMostLikely,
  kHighestRank,
  kTopN,
  kConcreteAssignment,
};

enum class EngineMode { kOnline, kGibbs };

struct DetectionMethod {
  EngineMode engine = EngineMode::kOnline;
  Heuristic heuristic = Heuristic::kTopN;
  int top_n = 30;
  double theta_threshold = 0.01;

  // "online/top_30", "gibbs/concrete_assignment", ...
  std::string name() const;
};

struct ConceptQuery {
  std::string word;               // folded form
  std::optional<int> token_id;    // empty when out of vocabulary
};

// Case-folds the word and resolves it against the corpus lexicon.
ConceptQuery make_query(const EncodedCorpus& corpus, std::string_view word);

// Competition rank of a word inside a topic: one plus the number of words
// with strictly higher probability, so tied words share the best rank.
int word_rank(const TopicModel& model, int topic, int word);

// Topic selection for a resolved query. Ties for the singleton heuristics
// go to the lowest topic id. OovError when the query has no token id;
// UsageError when concrete assignment is asked of a non-sampler run.
std::set<int> topics_for_concept(const TopicModel& model,
                                 const GibbsState* state,
                                 const ConceptQuery& query,
                                 const DetectionMethod& method);

// Segments associated with any of the given topics. Online mode reads the
// model's theta against the threshold; sampler mode asks whether any token
// of the segment is currently assigned to one of the topics. Segments with
// no tokens are never associated.
std::set<std::string> segments_for_topics(const TopicModel& model,
                                          const GibbsState* state,
                                          const EncodedCorpus& corpus,
                                          const std::set<int>& topics,
                                          const DetectionMethod& method);

// topics_for_concept composed with segments_for_topics.
std::set<std::string> detect(const EncodedCorpus& corpus,
                             const TopicModel& model, const GibbsState* state,
                             std::string_view word,
                             const DetectionMethod& method);

// Segments that contain the keyword itself. Out-of-vocabulary words give
// the empty set rather than an error.
std::set<std::string> keyword_baseline(const EncodedCorpus& corpus,
                                       std::string_view word);

// Keyword hits plus fallback detections on the segments the keyword does
// not reach. Always a superset of the keyword baseline.
std::set<std::string> hybrid_detect(const EncodedCorpus& corpus,
                                    const TopicModel& model,
                                    const GibbsState* state,
                                    std::string_view word,
                                    const DetectionMethod& fallback);

struct DetectionRecord {
  std::string word;
  std::string segment_id;
  std::string method;
};

// One JSON object per line, sorted by segment id (then concept, then
// method), preceded by '#' provenance comments.
void save_detections(const std::vector<DetectionRecord>& records,
                     const std::filesystem::path& path,
                     const Provenance* provenance = nullptr);

}  // namespace condet

#endif  // CONDET_DETECT_HPP_
