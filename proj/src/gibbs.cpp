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

#include "condet/gibbs.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>

#include <json.hpp>

#include "condet/error.hpp"
#include "condet/math.hpp"
#include "condet/rng.hpp"
#include "condet/version.hpp"

namespace condet {

namespace {

// Keyed counter draw in [0, 1): a splitmix64 finalizer chain over the run
// seed, the segment's id hash, the sweep number (0 = init) and the token
// position. Nested mixing avoids the collisions a plain xor of the inputs
// would allow.
double token_uniform(std::uint64_t seed, std::uint64_t seg_hash,
                     long long iteration, int pos) {
  std::uint64_t x = mix64(seed);
  x = mix64(x ^ seg_hash);
  x = mix64(x ^ static_cast<std::uint64_t>(iteration));
  x = mix64(x ^ static_cast<std::uint64_t>(pos));
  return to_unit_double(x);
}

void attach_corpus_metadata(GibbsState& state, const EncodedCorpus& corpus) {
  const int m = corpus.num_segments();
  state.segment_hash.resize(static_cast<std::size_t>(m));
  for (int d = 0; d < m; ++d) {
    state.segment_hash[static_cast<std::size_t>(d)] =
        fnv1a64(corpus.segment(d).id);
  }
  state.visit_order.resize(static_cast<std::size_t>(m));
  std::iota(state.visit_order.begin(), state.visit_order.end(), 0);
  std::sort(state.visit_order.begin(), state.visit_order.end(),
            [&corpus](int a, int b) {
              return corpus.segment(a).id < corpus.segment(b).id;
            });
}

void rebuild_counts(GibbsState& state, const EncodedCorpus& corpus) {
  const int k = state.hyper.K;
  state.n_dk = MatI(corpus.num_segments(), k);
  state.n_kw = MatI(k, corpus.vocab_size());
  state.n_k.assign(static_cast<std::size_t>(k), 0);
  for (int d = 0; d < corpus.num_segments(); ++d) {
    const auto& tokens = corpus.segment(d).tokens;
    const auto& zd = state.z[static_cast<std::size_t>(d)];
    for (std::size_t j = 0; j < tokens.size(); ++j) {
      const int topic = zd[j];
      const int word = tokens[j];
      ++state.n_dk(d, topic);
      ++state.n_kw(topic, word);
      ++state.n_k[static_cast<std::size_t>(topic)];
    }
  }
}

}  // namespace

GibbsState gibbs_init(const EncodedCorpus& corpus,
                      const Hyperparameters& hyper, std::uint64_t seed) {
  hyper.validate();
  if (corpus.total_tokens() == 0) {
    throw DataError("cannot train on a corpus with no tokens");
  }
  GibbsState state;
  state.hyper = hyper;
  state.seed = seed;
  state.iteration = 0;
  attach_corpus_metadata(state, corpus);

  const int m = corpus.num_segments();
  state.z.resize(static_cast<std::size_t>(m));
  for (int d = 0; d < m; ++d) {
    const auto& tokens = corpus.segment(d).tokens;
    auto& zd = state.z[static_cast<std::size_t>(d)];
    zd.resize(tokens.size());
    for (std::size_t j = 0; j < tokens.size(); ++j) {
      const double u = token_uniform(
          seed, state.segment_hash[static_cast<std::size_t>(d)], 0,
          static_cast<int>(j));
      int topic = static_cast<int>(u * hyper.K);
      if (topic >= hyper.K) topic = hyper.K - 1;
      zd[j] = topic;
    }
  }
  rebuild_counts(state, corpus);
  return state;
}

void gibbs_sweep(GibbsState& state, const EncodedCorpus& corpus) {
  const int k = state.hyper.K;
  const int v = corpus.vocab_size();
  const double alpha = state.hyper.alpha;
  const double beta = state.hyper.beta;
  const double vbeta = v * beta;
  ++state.iteration;

  std::vector<double> weights(static_cast<std::size_t>(k));
  for (int d : state.visit_order) {
    const auto& tokens = corpus.segment(d).tokens;
    auto& zd = state.z[static_cast<std::size_t>(d)];
    const std::uint64_t seg_hash =
        state.segment_hash[static_cast<std::size_t>(d)];
    for (std::size_t j = 0; j < tokens.size(); ++j) {
      const int word = tokens[j];
      const int old_topic = zd[j];
      --state.n_dk(d, old_topic);
      --state.n_kw(old_topic, word);
      --state.n_k[static_cast<std::size_t>(old_topic)];

      // Full conditional with this token held out:
      //   p(z = t) ~ (n_kw + beta) / (n_k + V beta) * (n_dk + alpha)
      for (int t = 0; t < k; ++t) {
        weights[static_cast<std::size_t>(t)] =
            (state.n_kw(t, word) + beta) /
            (state.n_k[static_cast<std::size_t>(t)] + vbeta) *
            (state.n_dk(d, t) + alpha);
      }
      const double u = token_uniform(state.seed, seg_hash, state.iteration,
                                     static_cast<int>(j));
      const int new_topic = categorical_from_weights(weights, u);

      ++state.n_dk(d, new_topic);
      ++state.n_kw(new_topic, word);
      ++state.n_k[static_cast<std::size_t>(new_topic)];
      zd[j] = new_topic;
    }
  }
}

TopicModel gibbs_estimate(const GibbsState& state,
                          const EncodedCorpus& corpus) {
  const int k = state.hyper.K;
  const int v = corpus.vocab_size();
  const int m = corpus.num_segments();
  const double alpha = state.hyper.alpha;
  const double beta = state.hyper.beta;

  TopicModel model;
  model.engine = "gibbs";
  model.hyper = state.hyper;
  model.phi = MatD(k, v);
  for (int t = 0; t < k; ++t) {
    const double denom = state.n_k[static_cast<std::size_t>(t)] + v * beta;
    for (int w = 0; w < v; ++w) {
      model.phi(t, w) = (state.n_kw(t, w) + beta) / denom;
    }
  }
  model.theta = MatD(m, k);
  for (int d = 0; d < m; ++d) {
    const double nd =
        static_cast<double>(corpus.segment(d).tokens.size());
    const double denom = nd + k * alpha;
    for (int t = 0; t < k; ++t) {
      model.theta(d, t) = (state.n_dk(d, t) + alpha) / denom;
    }
  }
  for (int d = 0; d < m; ++d) model.segment_ids.push_back(corpus.segment(d).id);
  model.vocabulary = corpus.vocabulary().terms();
  model.validate();
  return model;
}

GibbsRun gibbs_run(const EncodedCorpus& corpus, const Hyperparameters& hyper,
                   int burn_in, std::uint64_t seed, int average_samples) {
  if (burn_in < 0) {
    throw UsageError("burn-in may not be negative");
  }
  if (average_samples < 0) {
    throw UsageError("average_samples may not be negative");
  }
  GibbsRun run;
  run.state = gibbs_init(corpus, hyper, seed);
  for (int i = 0; i < burn_in; ++i) gibbs_sweep(run.state, corpus);

  if (average_samples == 0) {
    run.model = gibbs_estimate(run.state, corpus);
    return run;
  }

  // Average the per-sweep point estimates over extra sweeps. The mean of
  // row-stochastic matrices is row-stochastic, so validation still holds.
  TopicModel acc;
  for (int s = 0; s < average_samples; ++s) {
    gibbs_sweep(run.state, corpus);
    TopicModel sample = gibbs_estimate(run.state, corpus);
    if (s == 0) {
      acc = std::move(sample);
    } else {
      for (std::size_t i = 0; i < acc.phi.data().size(); ++i) {
        acc.phi.data()[i] += sample.phi.data()[i];
      }
      for (std::size_t i = 0; i < acc.theta.data().size(); ++i) {
        acc.theta.data()[i] += sample.theta.data()[i];
      }
    }
  }
  const double inv = 1.0 / average_samples;
  for (double& x : acc.phi.data()) x *= inv;
  for (double& x : acc.theta.data()) x *= inv;
  acc.validate();
  run.model = std::move(acc);
  return run;
}

std::vector<long long> assignment_counts(const GibbsState& state, int word) {
  if (word < 0 || word >= state.n_kw.cols()) {
    throw UsageError("word id out of range: " + std::to_string(word));
  }
  std::vector<long long> counts(static_cast<std::size_t>(state.hyper.K));
  for (int t = 0; t < state.hyper.K; ++t) {
    counts[static_cast<std::size_t>(t)] = state.n_kw(t, word);
  }
  return counts;
}

void check_counts(const GibbsState& state, const EncodedCorpus& corpus) {
  if (static_cast<int>(state.z.size()) != corpus.num_segments()) {
    throw DataError("assignment rows do not match corpus segment count");
  }
  GibbsState fresh;
  fresh.hyper = state.hyper;
  fresh.z = state.z;
  for (int d = 0; d < corpus.num_segments(); ++d) {
    const auto& tokens = corpus.segment(d).tokens;
    const auto& zd = state.z[static_cast<std::size_t>(d)];
    if (zd.size() != tokens.size()) {
      throw DataError("assignment length mismatch in segment \"" +
                      corpus.segment(d).id + "\"");
    }
    for (int topic : zd) {
      if (topic < 0 || topic >= state.hyper.K) {
        throw DataError("topic id out of range in segment \"" +
                        corpus.segment(d).id + "\"");
      }
    }
  }
  rebuild_counts(fresh, corpus);
  if (fresh.n_dk.data() != state.n_dk.data() ||
      fresh.n_kw.data() != state.n_kw.data() || fresh.n_k != state.n_k) {
    throw DataError("count tallies disagree with token assignments");
  }
}

void save_gibbs_state(const GibbsState& state,
                      const std::filesystem::path& path,
                      const Provenance* provenance) {
  nlohmann::ordered_json j;
  j["version"] = 1;
  if (provenance) {
    j["provenance"] = {{"tool", kToolName},
                       {"tool_version", kToolVersion},
                       {"config_hash", provenance->config_hash},
                       {"seed", provenance->seed}};
  }
  j["seed"] = state.seed;
  j["iteration"] = state.iteration;
  j["hyper"] = {{"K", state.hyper.K},
                {"alpha", state.hyper.alpha},
                {"beta", state.hyper.beta}};
  j["z"] = state.z;
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw DataError("cannot write file: " + path.string());
  }
  out << j.dump() << "\n";
}

GibbsState load_gibbs_state(const std::filesystem::path& path,
                            const EncodedCorpus& corpus) {
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
    GibbsState state;
    state.seed = j.at("seed").get<std::uint64_t>();
    state.iteration = j.at("iteration").get<long long>();
    state.hyper.K = j.at("hyper").at("K").get<int>();
    state.hyper.alpha = j.at("hyper").at("alpha").get<double>();
    state.hyper.beta = j.at("hyper").at("beta").get<double>();
    state.hyper.validate();
    state.z = j.at("z").get<std::vector<std::vector<int>>>();
    if (state.iteration < 0) {
      throw DataError("state file " + path.string() +
                      ": negative sweep count");
    }
    // Counts are never trusted from disk: rebuild from z and the corpus,
    // validating shape and topic range on the way.
    if (static_cast<int>(state.z.size()) != corpus.num_segments()) {
      throw DataError("state file " + path.string() +
                      ": segment count does not match corpus");
    }
    for (int d = 0; d < corpus.num_segments(); ++d) {
      const auto& tokens = corpus.segment(d).tokens;
      const auto& zd = state.z[static_cast<std::size_t>(d)];
      if (zd.size() != tokens.size()) {
        throw DataError("state file " + path.string() +
                        ": token count mismatch in segment \"" +
                        corpus.segment(d).id + "\"");
      }
      for (int topic : zd) {
        if (topic < 0 || topic >= state.hyper.K) {
          throw DataError("state file " + path.string() +
                          ": topic id out of range in segment \"" +
                          corpus.segment(d).id + "\"");
        }
      }
    }
    rebuild_counts(state, corpus);
    attach_corpus_metadata(state, corpus);
    return state;
  } catch (const nlohmann::json::exception& e) {
    throw DataError("state file " + path.string() + ": " + e.what());
  }
}

}  // namespace condet
