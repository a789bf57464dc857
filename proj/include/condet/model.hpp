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

#ifndef CONDET_MODEL_HPP_
#define CONDET_MODEL_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "condet/matrix.hpp"
#include "condet/provenance.hpp"

namespace condet {

// Topic count and the two Dirichlet concentrations. alpha smooths the
// per-segment topic mixture, beta the per-topic word distribution.
struct Hyperparameters {
  int K = 0;
  double alpha = 0.0;
  double beta = 0.0;

  // Conventional defaults: alpha = 50 / K, beta = 0.1.
  static Hyperparameters with_defaults(int K);

  // UsageError unless K >= 1, alpha > 0, beta > 0.
  void validate() const;
};

// A trained (or ground-truth) topic model. phi is K x V with one word
// distribution per topic; theta is M x K with one topic mixture per
// segment, aligned with segment_ids. Every row is a probability
// distribution; validate() enforces that within 1e-9.
struct TopicModel {
  std::string engine;  // "gibbs", "online" or "synthetic"
  Hyperparameters hyper;
  MatD phi;
  MatD theta;
  std::vector<std::string> segment_ids;
  std::vector<std::string> vocabulary;

  int K() const { return hyper.K; }
  int V() const { return phi.cols(); }
  int M() const { return theta.rows(); }

  void validate() const;
};

struct TopWord {
  int token_id = 0;
  std::string term;
  double probability = 0.0;
  int rank = 0;  // 1-based position in the sorted list
};

// The n most probable words of a topic, sorted by descending probability
// with ties broken by ascending token id. n is clipped to V.
std::vector<TopWord> top_words(const TopicModel& model, int topic, int n);

// Versioned JSON round trip. load_model re-validates and raises DataError
// on damaged or mismatched files.
std::string model_to_json(const TopicModel& model,
                          const Provenance* provenance = nullptr);
void save_model(const TopicModel& model, const std::filesystem::path& path,
                const Provenance* provenance = nullptr);
TopicModel load_model(const std::filesystem::path& path);

}  // namespace condet

#endif  // CONDET_MODEL_HPP_
