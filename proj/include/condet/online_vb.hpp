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

#ifndef CONDET_ONLINE_VB_HPP_
#define CONDET_ONLINE_VB_HPP_

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "condet/corpus.hpp"
#include "condet/matrix.hpp"
#include "condet/model.hpp"

namespace condet {

// Stochastic variational state. lambda is the K x V variational Dirichlet
// over topic-word distributions; updates_seen counts minibatch updates and
// drives the decaying learning rate.
struct VBState {
  Hyperparameters hyper;  // alpha: mixture prior, beta: word prior (eta)
  MatD lambda;
  double tau0 = 1.0;   // delay, >= 0
  double kappa = 0.7;  // forgetting rate, in (0.5, 1] so updates converge
  int batch_size = 256;
  long long updates_seen = 0;
};

// Learning rate rho_t = (1 + tau0 + t)^(-kappa); always in (0, 1] and
// exactly 1 at the first update when tau0 = 0.
double vb_rho(const VBState& state);

// Seeds lambda with Gamma(100, 0.01) noise, the usual mildly-perturbed
// flat start.
VBState vb_init(const Hyperparameters& hyper, int V, double tau0,
                double kappa, int batch_size, std::uint64_t seed);

using TokenView = std::span<const int>;

struct EStepOptions {
  double tol = 1e-4;  // stop when mean per-component |delta gamma| < tol
  int max_iter = 100;
  bool trace_elbo = false;
};

struct EStepResult {
  std::vector<std::vector<double>> gamma;  // one K-vector per batch segment
  MatD stats;                              // K x V expected token counts
  // Per segment, the variational objective after each inner iteration
  // (only filled when trace_elbo is set). Coordinate ascent makes each
  // trace non-decreasing.
  std::vector<std::vector<double>> elbo_trace;
};

// Fixed-point updates of the per-segment variational parameters with
// lambda frozen. The batch must not be empty; empty segments inside it
// yield gamma = alpha and contribute nothing to the statistics.
EStepResult vb_e_step(const VBState& state,
                      const std::vector<TokenView>& batch,
                      const EStepOptions& options = {});

// One stochastic update from a minibatch:
//   lambda_hat = eta + (corpus_docs / batch_size) * stats
//   lambda     = (1 - rho) * lambda + rho * lambda_hat
// corpus_docs is the number of training (non-empty) segments the batch was
// drawn from.
void vb_update(VBState& state, const std::vector<TokenView>& batch,
               long long corpus_docs, const EStepOptions& options = {});

// Posterior over topics for one segment under the current lambda.
// theta is gamma normalized to sum 1.
struct SegmentPosterior {
  std::vector<double> gamma;
  std::vector<double> theta;
};
SegmentPosterior vb_infer_theta(const VBState& state, TokenView tokens,
                                const EStepOptions& options = {});

// Expected topic-word distributions: lambda rows normalized.
MatD vb_phi(const VBState& state);

struct VBOptions {
  int batch_size = 256;
  double tau0 = 1.0;
  double kappa = 0.7;
  int passes = 1;
  double tol = 1e-4;
  int max_iter = 100;
};

struct VBRun {
  VBState state;
  TopicModel model;
};

// Shuffles the non-empty segments once per pass (seeded), feeds them
// through in minibatches, then takes a final full e-step over every
// segment to snapshot theta. Deterministic for fixed seed and options.
VBRun vb_train(const EncodedCorpus& corpus, const Hyperparameters& hyper,
               const VBOptions& options, std::uint64_t seed);

// Versioned JSON round trip for the update state.
void save_vb_state(const VBState& state, const std::filesystem::path& path,
                   const Provenance* provenance = nullptr);
VBState load_vb_state(const std::filesystem::path& path);

}  // namespace condet

#endif  // CONDET_ONLINE_VB_HPP_
