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

#include "condet/online_vb.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "condet/error.hpp"
#include "condet/math.hpp"
#include "condet/rng.hpp"
#include "condet/version.hpp"

namespace condet {

namespace {

// A segment reduced to (word, count) pairs in first-occurrence order.
struct DocCounts {
  std::vector<int> words;
  std::vector<double> counts;
};

DocCounts collapse(TokenView tokens, int v) {
  DocCounts doc;
  std::vector<int> slot(static_cast<std::size_t>(v), -1);
  for (int t : tokens) {
    if (t < 0 || t >= v) {
      throw DataError("token id " + std::to_string(t) +
                      " outside model vocabulary of size " + std::to_string(v));
    }
    int& s = slot[static_cast<std::size_t>(t)];
    if (s < 0) {
      s = static_cast<int>(doc.words.size());
      doc.words.push_back(t);
      doc.counts.push_back(0.0);
    }
    doc.counts[static_cast<std::size_t>(s)] += 1.0;
  }
  return doc;
}

std::vector<double> dirichlet_expectation(const std::vector<double>& v) {
  double total = 0.0;
  for (double x : v) total += x;
  const double psi_total = digamma(total);
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = digamma(v[i]) - psi_total;
  }
  return out;
}

// Variational objective for one segment with lambda frozen. phi rows are
// the per-word responsibilities aligned with doc.words.
double doc_elbo(const DocCounts& doc, const std::vector<double>& gamma,
                const MatD& phi, const MatD& elog_beta, double alpha) {
  const int k = static_cast<int>(gamma.size());
  const std::vector<double> elog_theta = dirichlet_expectation(gamma);
  double value = 0.0;
  for (std::size_t i = 0; i < doc.words.size(); ++i) {
    const int w = doc.words[i];
    for (int t = 0; t < k; ++t) {
      const double p = phi(static_cast<int>(i), t);
      if (p > 0.0) {
        value += doc.counts[i] * p *
                 (elog_theta[static_cast<std::size_t>(t)] + elog_beta(t, w) -
                  std::log(p));
      }
    }
  }
  double gamma_sum = 0.0;
  for (int t = 0; t < k; ++t) {
    const double g = gamma[static_cast<std::size_t>(t)];
    value += (alpha - g) * elog_theta[static_cast<std::size_t>(t)];
    value += std::lgamma(g);
    gamma_sum += g;
  }
  value -= std::lgamma(gamma_sum);
  value += std::lgamma(k * alpha) - k * std::lgamma(alpha);
  return value;
}

MatD compute_elog_beta(const MatD& lambda) {
  MatD out(lambda.rows(), lambda.cols());
  for (int t = 0; t < lambda.rows(); ++t) {
    double total = 0.0;
    for (double x : lambda.row(t)) total += x;
    const double psi_total = digamma(total);
    for (int w = 0; w < lambda.cols(); ++w) {
      out(t, w) = digamma(lambda(t, w)) - psi_total;
    }
  }
  return out;
}

// Responsibilities for every word of the segment from the current gamma:
//   phi_wk ~ exp(Elog theta_k + Elog beta_kw), normalized over k.
void fill_responsibilities(const DocCounts& doc,
                           const std::vector<double>& gamma,
                           const MatD& elog_beta, MatD* phi) {
  const int k = static_cast<int>(gamma.size());
  const std::vector<double> elog_theta = dirichlet_expectation(gamma);
  for (std::size_t i = 0; i < doc.words.size(); ++i) {
    const int w = doc.words[i];
    double best = -1e300;
    for (int t = 0; t < k; ++t) {
      const double lp = elog_theta[static_cast<std::size_t>(t)] +
                        elog_beta(t, w);
      (*phi)(static_cast<int>(i), t) = lp;
      if (lp > best) best = lp;
    }
    double norm = 0.0;
    for (int t = 0; t < k; ++t) {
      const double e = std::exp((*phi)(static_cast<int>(i), t) - best);
      (*phi)(static_cast<int>(i), t) = e;
      norm += e;
    }
    for (int t = 0; t < k; ++t) (*phi)(static_cast<int>(i), t) /= norm;
  }
}

void check_vb_knobs(double tau0, double kappa, int batch_size) {
  if (!(tau0 >= 0.0) || !std::isfinite(tau0)) {
    throw UsageError("tau0 must be nonnegative and finite");
  }
  if (!(kappa > 0.5) || kappa > 1.0) {
    throw UsageError("kappa must lie in (0.5, 1]");
  }
  if (batch_size < 1) {
    throw UsageError("batch size must be at least 1");
  }
}

}  // namespace

double vb_rho(const VBState& state) {
  return std::pow(1.0 + state.tau0 + static_cast<double>(state.updates_seen),
                  -state.kappa);
}

VBState vb_init(const Hyperparameters& hyper, int V, double tau0,
                double kappa, int batch_size, std::uint64_t seed) {
  hyper.validate();
  if (V < 1) {
    throw UsageError("vocabulary size must be at least 1");
  }
  check_vb_knobs(tau0, kappa, batch_size);
  VBState state;
  state.hyper = hyper;
  state.tau0 = tau0;
  state.kappa = kappa;
  state.batch_size = batch_size;
  state.updates_seen = 0;
  state.lambda = MatD(hyper.K, V);
  Rng rng(seed);
  for (double& x : state.lambda.data()) x = rng.gamma(100.0) * 0.01;
  return state;
}

EStepResult vb_e_step(const VBState& state,
                      const std::vector<TokenView>& batch,
                      const EStepOptions& options) {
  if (batch.empty()) {
    throw UsageError("e-step batch is empty");
  }
  if (options.max_iter < 1) {
    throw UsageError("max_iter must be at least 1");
  }
  if (!(options.tol >= 0.0)) {
    throw UsageError("tol may not be negative");
  }
  const int k = state.hyper.K;
  const int v = state.lambda.cols();
  const double alpha = state.hyper.alpha;
  const MatD elog_beta = compute_elog_beta(state.lambda);

  EStepResult result;
  result.stats = MatD(k, v, 0.0);
  result.gamma.reserve(batch.size());
  if (options.trace_elbo) result.elbo_trace.resize(batch.size());

  for (std::size_t b = 0; b < batch.size(); ++b) {
    const DocCounts doc = collapse(batch[b], v);
    const double n = static_cast<double>(batch[b].size());
    std::vector<double> gamma(static_cast<std::size_t>(k),
                              alpha + n / static_cast<double>(k));
    MatD phi(static_cast<int>(doc.words.size()), k);

    for (int it = 0; it < options.max_iter; ++it) {
      fill_responsibilities(doc, gamma, elog_beta, &phi);
      std::vector<double> fresh(static_cast<std::size_t>(k), alpha);
      for (std::size_t i = 0; i < doc.words.size(); ++i) {
        for (int t = 0; t < k; ++t) {
          fresh[static_cast<std::size_t>(t)] +=
              doc.counts[i] * phi(static_cast<int>(i), t);
        }
      }
      double change = 0.0;
      for (int t = 0; t < k; ++t) {
        change += std::abs(fresh[static_cast<std::size_t>(t)] -
                           gamma[static_cast<std::size_t>(t)]);
      }
      change /= static_cast<double>(k);
      gamma = std::move(fresh);
      if (options.trace_elbo) {
        result.elbo_trace[b].push_back(
            doc_elbo(doc, gamma, phi, elog_beta, alpha));
      }
      if (change < options.tol) break;
    }

    // Statistics use responsibilities recomputed from the final gamma.
    fill_responsibilities(doc, gamma, elog_beta, &phi);
    for (std::size_t i = 0; i < doc.words.size(); ++i) {
      const int w = doc.words[i];
      for (int t = 0; t < k; ++t) {
        result.stats(t, w) += doc.counts[i] * phi(static_cast<int>(i), t);
      }
    }
    result.gamma.push_back(std::move(gamma));
  }
  return result;
}

void vb_update(VBState& state, const std::vector<TokenView>& batch,
               long long corpus_docs, const EStepOptions& options) {
  if (corpus_docs < static_cast<long long>(batch.size())) {
    throw UsageError("corpus_docs smaller than the batch itself");
  }
  const EStepResult estep = vb_e_step(state, batch, options);
  const double rho = vb_rho(state);
  const double scale = static_cast<double>(corpus_docs) /
                       static_cast<double>(batch.size());
  const double eta = state.hyper.beta;
  for (int t = 0; t < state.lambda.rows(); ++t) {
    for (int w = 0; w < state.lambda.cols(); ++w) {
      const double lambda_hat = eta + scale * estep.stats(t, w);
      state.lambda(t, w) = (1.0 - rho) * state.lambda(t, w) + rho * lambda_hat;
    }
  }
  ++state.updates_seen;
}

SegmentPosterior vb_infer_theta(const VBState& state, TokenView tokens,
                                const EStepOptions& options) {
  const EStepResult estep = vb_e_step(state, {tokens}, options);
  SegmentPosterior post;
  post.gamma = estep.gamma.front();
  post.theta.resize(post.gamma.size());
  double total = 0.0;
  for (double g : post.gamma) total += g;
  for (std::size_t i = 0; i < post.gamma.size(); ++i) {
    post.theta[i] = post.gamma[i] / total;
  }
  return post;
}

MatD vb_phi(const VBState& state) {
  MatD phi = state.lambda;
  for (int t = 0; t < phi.rows(); ++t) {
    double total = 0.0;
    for (double x : phi.row(t)) total += x;
    for (double& x : phi.row(t)) x /= total;
  }
  return phi;
}

VBRun vb_train(const EncodedCorpus& corpus, const Hyperparameters& hyper,
               const VBOptions& options, std::uint64_t seed) {
  hyper.validate();
  check_vb_knobs(options.tau0, options.kappa, options.batch_size);
  if (options.passes < 1) {
    throw UsageError("passes must be at least 1");
  }
  if (corpus.total_tokens() == 0) {
    throw DataError("cannot train on a corpus with no tokens");
  }

  VBRun run;
  run.state = vb_init(hyper, corpus.vocab_size(), options.tau0, options.kappa,
                      options.batch_size, seed);
  EStepOptions estep_opts;
  estep_opts.tol = options.tol;
  estep_opts.max_iter = options.max_iter;

  std::vector<int> docs;
  for (int d = 0; d < corpus.num_segments(); ++d) {
    if (!corpus.segment(d).tokens.empty()) docs.push_back(d);
  }
  const long long training_docs = static_cast<long long>(docs.size());

  Rng shuffle_rng(mix64(seed ^ fnv1a64("pass-shuffle")));
  for (int pass = 0; pass < options.passes; ++pass) {
    shuffle_rng.shuffle(docs);
    for (std::size_t start = 0; start < docs.size();
         start += static_cast<std::size_t>(options.batch_size)) {
      const std::size_t stop =
          std::min(docs.size(),
                   start + static_cast<std::size_t>(options.batch_size));
      std::vector<TokenView> batch;
      batch.reserve(stop - start);
      for (std::size_t i = start; i < stop; ++i) {
        batch.push_back(corpus.segment(docs[i]).tokens);
      }
      vb_update(run.state, batch, training_docs, estep_opts);
    }
  }

  // Snapshot theta for every segment, empty ones included, with the
  // final lambda frozen.
  std::vector<TokenView> all;
  all.reserve(static_cast<std::size_t>(corpus.num_segments()));
  for (int d = 0; d < corpus.num_segments(); ++d) {
    all.push_back(corpus.segment(d).tokens);
  }
  const EStepResult final_estep = vb_e_step(run.state, all, estep_opts);

  TopicModel model;
  model.engine = "online";
  model.hyper = hyper;
  model.phi = vb_phi(run.state);
  model.theta = MatD(corpus.num_segments(), hyper.K);
  for (int d = 0; d < corpus.num_segments(); ++d) {
    const auto& gamma = final_estep.gamma[static_cast<std::size_t>(d)];
    double total = 0.0;
    for (double g : gamma) total += g;
    for (int t = 0; t < hyper.K; ++t) {
      model.theta(d, t) = gamma[static_cast<std::size_t>(t)] / total;
    }
    model.segment_ids.push_back(corpus.segment(d).id);
  }
  model.vocabulary = corpus.vocabulary().terms();
  model.validate();
  run.model = std::move(model);
  return run;
}

void save_vb_state(const VBState& state, const std::filesystem::path& path,
                   const Provenance* provenance) {
  nlohmann::ordered_json j;
  j["version"] = 1;
  if (provenance) {
    j["provenance"] = {{"tool", kToolName},
                       {"tool_version", kToolVersion},
                       {"config_hash", provenance->config_hash},
                       {"seed", provenance->seed}};
  }
  j["t"] = state.updates_seen;
  j["tau0"] = state.tau0;
  j["kappa"] = state.kappa;
  j["batch_size"] = state.batch_size;
  j["hyper"] = {{"K", state.hyper.K},
                {"alpha", state.hyper.alpha},
                {"beta", state.hyper.beta}};
  nlohmann::ordered_json lambda = nlohmann::ordered_json::array();
  for (int t = 0; t < state.lambda.rows(); ++t) {
    lambda.push_back(std::vector<double>(state.lambda.row(t).begin(),
                                         state.lambda.row(t).end()));
  }
  j["lambda"] = std::move(lambda);
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw DataError("cannot write file: " + path.string());
  }
  out << j.dump() << "\n";
}

VBState load_vb_state(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw DataError("cannot open file: " + path.string());
  }
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DataError("state file " + path.string() + ": " + e.what());
  }
  try {
    if (!j.is_object() || j.value("version", 0) != 1) {
      throw DataError("state file " + path.string() +
                      ": missing or unsupported version");
    }
    VBState state;
    state.updates_seen = j.at("t").get<long long>();
    state.tau0 = j.at("tau0").get<double>();
    state.kappa = j.at("kappa").get<double>();
    state.batch_size = j.at("batch_size").get<int>();
    state.hyper.K = j.at("hyper").at("K").get<int>();
    state.hyper.alpha = j.at("hyper").at("alpha").get<double>();
    state.hyper.beta = j.at("hyper").at("beta").get<double>();
    state.hyper.validate();
    check_vb_knobs(state.tau0, state.kappa, state.batch_size);
    if (state.updates_seen < 0) {
      throw DataError("state file " + path.string() + ": negative t");
    }
    const auto& lambda = j.at("lambda");
    if (static_cast<int>(lambda.size()) != state.hyper.K) {
      throw DataError("state file " + path.string() +
                      ": lambda row count disagrees with K");
    }
    const auto first = lambda.at(0).get<std::vector<double>>();
    state.lambda = MatD(state.hyper.K, static_cast<int>(first.size()));
    for (int t = 0; t < state.hyper.K; ++t) {
      const auto row = lambda.at(t).get<std::vector<double>>();
      if (row.size() != first.size()) {
        throw DataError("state file " + path.string() +
                        ": ragged lambda rows");
      }
      for (std::size_t w = 0; w < row.size(); ++w) {
        if (!(row[w] > 0.0) || !std::isfinite(row[w])) {
          throw DataError("state file " + path.string() +
                          ": lambda entries must be positive and finite");
        }
        state.lambda(t, static_cast<int>(w)) = row[w];
      }
    }
    return state;
  } catch (const nlohmann::json::exception& e) {
    throw DataError("state file " + path.string() + ": " + e.what());
  }
}

}  // namespace condet
