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

#ifndef CONDET_GIBBS_HPP_
#define CONDET_GIBBS_HPP_

#include <cstdint>
#include <filesystem>
#include <vector>

#include "condet/corpus.hpp"
#include "condet/matrix.hpp"
#include "condet/model.hpp"

namespace condet {

// Collapsed sampler state: one topic per token plus the three count
// tallies the full conditional needs. The tallies are always derivable
// from z; check_counts verifies that.
//
// Randomness is a pure function of (seed, segment id, sweep number, token
// position), so a run can be resumed from a saved state and reordering
// segments in the corpus only permutes results. Sweeps visit segments in
// lexicographic id order for the same reason.
struct GibbsState {
  Hyperparameters hyper;
  std::uint64_t seed = 0;
  long long iteration = 0;  // completed sweeps; 0 right after init
  std::vector<std::vector<int>> z;

  MatI n_dk;                     // segment x topic
  MatI n_kw;                     // topic x word
  std::vector<long long> n_k;    // tokens per topic

  // Derived from the corpus; rebuilt on load.
  std::vector<std::uint64_t> segment_hash;
  std::vector<int> visit_order;
};

// Assigns every token a uniform random topic and builds the tallies.
// The corpus must contain at least one token.
GibbsState gibbs_init(const EncodedCorpus& corpus,
                      const Hyperparameters& hyper, std::uint64_t seed);

// One full sweep: each token is resampled from its full conditional with
// its own current assignment excluded from the tallies.
void gibbs_sweep(GibbsState& state, const EncodedCorpus& corpus);

// Posterior-mean point estimates from the current counts:
//   phi[k][w]   = (n_kw + beta) / (n_k + V beta)
//   theta[d][k] = (n_dk + alpha) / (N_d + K alpha)
TopicModel gibbs_estimate(const GibbsState& state,
                          const EncodedCorpus& corpus);

struct GibbsRun {
  GibbsState state;
  TopicModel model;
};

// Init plus burn_in sweeps, then a point estimate from the final state.
// With average_samples > 0, that many further sweeps are taken and the
// per-sweep estimates are averaged instead.
GibbsRun gibbs_run(const EncodedCorpus& corpus, const Hyperparameters& hyper,
                   int burn_in, std::uint64_t seed, int average_samples = 0);

// How many tokens of this word each topic currently holds (n_kw column).
std::vector<long long> assignment_counts(const GibbsState& state, int word);

// Recomputes all tallies from z and compares; DataError on any mismatch.
void check_counts(const GibbsState& state, const EncodedCorpus& corpus);

// Versioned JSON state file holding seed, sweep number, hyperparameters
// and the raw assignments. Loading recomputes the tallies against the
// given corpus and fails if shapes or topic ids disagree.
void save_gibbs_state(const GibbsState& state,
                      const std::filesystem::path& path,
                      const Provenance* provenance = nullptr);
GibbsState load_gibbs_state(const std::filesystem::path& path,
                            const EncodedCorpus& corpus);

}  // namespace condet

#endif  // CONDET_GIBBS_HPP_
