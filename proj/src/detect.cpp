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

#include "condet/detect.hpp"

#include <algorithm>
#include <fstream>

#include <json.hpp>

#include "condet/error.hpp"

namespace condet {

namespace {

void check_alignment(const TopicModel& model, const EncodedCorpus& corpus) {
  if (model.V() != corpus.vocab_size()) {
    throw DataError("model vocabulary size does not match corpus");
  }
  if (model.M() != corpus.num_segments()) {
    throw DataError("model segment count does not match corpus");
  }
  for (int d = 0; d < model.M(); ++d) {
    if (model.segment_ids[static_cast<std::size_t>(d)] !=
        corpus.segment(d).id) {
      throw DataError("model segment ids do not match corpus order");
    }
  }
}

void check_state(const GibbsState* state, const TopicModel& model,
                 const EncodedCorpus& corpus, const char* what) {
  if (!state) {
    throw UsageError(std::string(what) + " needs a sampler state");
  }
  if (state->hyper.K != model.K()) {
    throw DataError("sampler state topic count does not match model");
  }
  if (static_cast<int>(state->z.size()) != corpus.num_segments()) {
    throw DataError("sampler state does not match corpus segment count");
  }
}

}  // namespace

std::string DetectionMethod::name() const {
  std::string prefix =
      engine == EngineMode::kOnline ? "online/" : "gibbs/";
  switch (heuristic) {
    case Heuristic::kMostLikely:
      return prefix + "most_likely";
    case Heuristic::kHighestRank:
      return prefix + "highest_rank";
    case Heuristic::kTopN:
      return prefix + "top_" + std::to_string(top_n);
    case Heuristic::kConcreteAssignment:
      return prefix + "concrete_assignment";
  }
  return prefix + "unknown";
}

ConceptQuery make_query(const EncodedCorpus& corpus, std::string_view word) {
  ConceptQuery q;
  q.word = fold_case(word);
  q.token_id = keyword_lookup(corpus, q.word);
  return q;
}

int word_rank(const TopicModel& model, int topic, int word) {
  if (topic < 0 || topic >= model.K()) {
    throw UsageError("topic index out of range: " + std::to_string(topic));
  }
  if (word < 0 || word >= model.V()) {
    throw UsageError("word id out of range: " + std::to_string(word));
  }
  const double p = model.phi(topic, word);
  int greater = 0;
  for (double x : model.phi.row(topic)) {
    if (x > p) ++greater;
  }
  return greater + 1;
}

std::set<int> topics_for_concept(const TopicModel& model,
                                 const GibbsState* state,
                                 const ConceptQuery& query,
                                 const DetectionMethod& method) {
  if (!query.token_id) {
    throw OovError(query.word);
  }
  const int w = *query.token_id;
  if (w < 0 || w >= model.V()) {
    throw DataError("query token id " + std::to_string(w) +
                    " outside model vocabulary");
  }

  std::set<int> topics;
  switch (method.heuristic) {
    case Heuristic::kMostLikely: {
      int best = 0;
      for (int k = 1; k < model.K(); ++k) {
        if (model.phi(k, w) > model.phi(best, w)) best = k;
      }
      topics.insert(best);
      break;
    }
    case Heuristic::kHighestRank: {
      int best = 0;
      int best_rank = word_rank(model, 0, w);
      for (int k = 1; k < model.K(); ++k) {
        const int r = word_rank(model, k, w);
        if (r < best_rank) {
          best = k;
          best_rank = r;
        }
      }
      topics.insert(best);
      break;
    }
    case Heuristic::kTopN: {
      if (method.top_n < 1) {
        throw UsageError("top_n must be at least 1");
      }
      for (int k = 0; k < model.K(); ++k) {
        if (word_rank(model, k, w) <= method.top_n) topics.insert(k);
      }
      break;
    }
    case Heuristic::kConcreteAssignment: {
      if (method.engine != EngineMode::kGibbs) {
        throw UsageError(
            "concrete_assignment is only defined for sampler runs");
      }
      if (!state) {
        throw UsageError("concrete_assignment needs a sampler state");
      }
      if (w >= state->n_kw.cols()) {
        throw DataError("query token id outside sampler vocabulary");
      }
      for (int k = 0; k < model.K(); ++k) {
        if (state->n_kw(k, w) >= 1) topics.insert(k);
      }
      break;
    }
  }
  return topics;
}

std::set<std::string> segments_for_topics(const TopicModel& model,
                                          const GibbsState* state,
                                          const EncodedCorpus& corpus,
                                          const std::set<int>& topics,
                                          const DetectionMethod& method) {
  check_alignment(model, corpus);
  for (int k : topics) {
    if (k < 0 || k >= model.K()) {
      throw UsageError("topic index out of range: " + std::to_string(k));
    }
  }
  std::set<std::string> hits;
  if (topics.empty()) return hits;

  if (method.engine == EngineMode::kOnline) {
    if (!(method.theta_threshold > 0.0)) {
      throw UsageError("theta threshold must be positive");
    }
    for (int d = 0; d < corpus.num_segments(); ++d) {
      if (corpus.segment(d).tokens.empty()) continue;
      for (int k : topics) {
        if (model.theta(d, k) >= method.theta_threshold) {
          hits.insert(corpus.segment(d).id);
          break;
        }
      }
    }
  } else {
    check_state(state, model, corpus, "sampler-mode association");
    std::vector<char> wanted(static_cast<std::size_t>(model.K()), 0);
    for (int k : topics) wanted[static_cast<std::size_t>(k)] = 1;
    for (int d = 0; d < corpus.num_segments(); ++d) {
      const auto& zd = state->z[static_cast<std::size_t>(d)];
      for (int topic : zd) {
        if (wanted[static_cast<std::size_t>(topic)]) {
          hits.insert(corpus.segment(d).id);
          break;
        }
      }
    }
  }
  return hits;
}

std::set<std::string> detect(const EncodedCorpus& corpus,
                             const TopicModel& model, const GibbsState* state,
                             std::string_view word,
                             const DetectionMethod& method) {
  const ConceptQuery query = make_query(corpus, word);
  const std::set<int> topics =
      topics_for_concept(model, state, query, method);
  return segments_for_topics(model, state, corpus, topics, method);
}

std::set<std::string> keyword_baseline(const EncodedCorpus& corpus,
                                       std::string_view word) {
  std::set<std::string> hits;
  const std::optional<int> id = keyword_lookup(corpus, word);
  if (!id) return hits;
  for (int d = 0; d < corpus.num_segments(); ++d) {
    if (keyword_occurs(corpus, *id, d)) hits.insert(corpus.segment(d).id);
  }
  return hits;
}

std::set<std::string> hybrid_detect(const EncodedCorpus& corpus,
                                    const TopicModel& model,
                                    const GibbsState* state,
                                    std::string_view word,
                                    const DetectionMethod& fallback) {
  std::set<std::string> hits = keyword_baseline(corpus, word);
  const std::set<std::string> with_keyword = hits;
  for (const std::string& id :
       detect(corpus, model, state, word, fallback)) {
    if (!with_keyword.count(id)) hits.insert(id);
  }
  return hits;
}

void save_detections(const std::vector<DetectionRecord>& records,
                     const std::filesystem::path& path,
                     const Provenance* provenance) {
  std::vector<DetectionRecord> sorted = records;
  std::sort(sorted.begin(), sorted.end(),
            [](const DetectionRecord& a, const DetectionRecord& b) {
              if (a.segment_id != b.segment_id) {
                return a.segment_id < b.segment_id;
              }
              if (a.word != b.word) return a.word < b.word;
              return a.method < b.method;
            });
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw DataError("cannot write file: " + path.string());
  }
  if (provenance) out << provenance_comment(*provenance);
  for (const DetectionRecord& r : sorted) {
    nlohmann::ordered_json j{
        {"concept", r.word}, {"segment", r.segment_id}, {"method", r.method}};
    out << j.dump() << "\n";
  }
}

}  // namespace condet
