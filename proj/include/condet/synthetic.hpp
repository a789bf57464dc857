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

#ifndef CONDET_SYNTHETIC_HPP_
#define CONDET_SYNTHETIC_HPP_

#include <cstdint>
#include <vector>

#include "condet/corpus.hpp"
#include "condet/matrix.hpp"
#include "condet/model.hpp"

namespace condet {

// A corpus drawn from the model's own generative story, bundled with the
// ground truth that generated it. truth.engine is "synthetic"; z holds the
// true topic of every token, aligned with corpus segments.
struct SyntheticCorpus {
  EncodedCorpus corpus;
  TopicModel truth;
  std::vector<std::vector<int>> z;
};

// Draws phi_k ~ Dirichlet(beta) per topic, theta_i ~ Dirichlet(alpha) per
// segment, then z ~ Mult(theta_i) and w ~ Mult(phi_z) per token position.
// lengths gives each segment's token count (total must be positive).
// Deterministic for a fixed seed. Segment ids are "s000000", "s000001", ...
// and terms are "w0", "w1", ...
SyntheticCorpus generate_corpus(const Hyperparameters& hyper, int V,
                                const std::vector<int>& lengths,
                                std::uint64_t seed);

// Same story with caller-supplied topic-word distributions. Rows of phi
// must be probability distributions; zero entries are allowed, so a word
// can be made reachable through exactly one topic.
SyntheticCorpus generate_corpus_from_phi(const MatD& phi, double alpha,
                                         const std::vector<int>& lengths,
                                         std::uint64_t seed);

}  // namespace condet

#endif  // CONDET_SYNTHETIC_HPP_
