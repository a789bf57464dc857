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

#include "condet/synthetic.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>

#include "condet/error.hpp"
#include "condet/rng.hpp"

namespace condet {

namespace {

void check_lengths(const std::vector<int>& lengths) {
  if (lengths.empty()) {
    throw UsageError("synthetic corpus needs at least one segment");
  }
  long long total = 0;
  for (int n : lengths) {
    if (n < 0) throw UsageError("segment length may not be negative");
    total += n;
  }
  if (total == 0) {
    throw UsageError("synthetic corpus needs at least one token in total");
  }
}

void check_phi_rows(const MatD& phi) {
  if (phi.rows() < 1 || phi.cols() < 1) {
    throw UsageError("phi must have at least one topic and one word");
  }
  for (int k = 0; k < phi.rows(); ++k) {
    double sum = 0.0;
    for (double x : phi.row(k)) {
      if (!(x >= 0.0) || !std::isfinite(x)) {
        throw UsageError("phi row " + std::to_string(k) +
                         " has a negative or non-finite entry");
      }
      sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      throw UsageError("phi row " + std::to_string(k) + " does not sum to 1");
    }
  }
}

std::string segment_name(int i) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "s%06d", i);
  return buf;
}

// Shared tail of both generators: draws theta per segment, then topics and
// words per position, all from the same stream the caller seeded.
SyntheticCorpus finish_generation(const MatD& phi, double alpha, double beta,
                                  const std::vector<int>& lengths, Rng& rng) {
  const int K = phi.rows();
  const int V = phi.cols();
  const int M = static_cast<int>(lengths.size());

  MatD theta(M, K);
  for (int d = 0; d < M; ++d) {
    std::vector<double> row = rng.dirichlet(alpha, K);
    std::copy(row.begin(), row.end(), theta.row(d).begin());
  }

  SyntheticCorpus out;
  out.z.resize(static_cast<std::size_t>(M));
  std::vector<EncodedSegment> segments(static_cast<std::size_t>(M));
  for (int d = 0; d < M; ++d) {
    EncodedSegment& seg = segments[static_cast<std::size_t>(d)];
    seg.id = segment_name(d);
    const int len = lengths[static_cast<std::size_t>(d)];
    seg.tokens.reserve(static_cast<std::size_t>(len));
    out.z[static_cast<std::size_t>(d)].reserve(static_cast<std::size_t>(len));
    for (int j = 0; j < len; ++j) {
      const int topic = categorical_from_weights(theta.row(d), rng.uniform());
      const int word = categorical_from_weights(phi.row(topic), rng.uniform());
      out.z[static_cast<std::size_t>(d)].push_back(topic);
      seg.tokens.push_back(word);
    }
  }

  std::vector<std::string> vocab(static_cast<std::size_t>(V));
  for (int v = 0; v < V; ++v) vocab[static_cast<std::size_t>(v)] = "w" + std::to_string(v);
  out.corpus = make_corpus(vocab, std::move(segments));

  out.truth.engine = "synthetic";
  out.truth.hyper = Hyperparameters{K, alpha, beta};
  out.truth.phi = phi;
  out.truth.theta = std::move(theta);
  for (int d = 0; d < M; ++d) {
    out.truth.segment_ids.push_back(out.corpus.segment(d).id);
  }
  out.truth.vocabulary = vocab;
  out.truth.validate();
  return out;
}

}  // namespace

SyntheticCorpus generate_corpus(const Hyperparameters& hyper, int V,
                                const std::vector<int>& lengths,
                                std::uint64_t seed) {
  hyper.validate();
  if (V < 1) {
    throw UsageError("vocabulary size must be at least 1, got " +
                     std::to_string(V));
  }
  check_lengths(lengths);

  Rng rng(seed);
  MatD phi(hyper.K, V);
  for (int k = 0; k < hyper.K; ++k) {
    std::vector<double> row = rng.dirichlet(hyper.beta, V);
    std::copy(row.begin(), row.end(), phi.row(k).begin());
  }
  return finish_generation(phi, hyper.alpha, hyper.beta, lengths, rng);
}

SyntheticCorpus generate_corpus_from_phi(const MatD& phi, double alpha,
                                         const std::vector<int>& lengths,
                                         std::uint64_t seed) {
  check_phi_rows(phi);
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw UsageError("alpha must be positive and finite");
  }
  check_lengths(lengths);
  Rng rng(seed);
  // beta plays no role when phi is fixed; record 1.0 in the truth model.
  return finish_generation(phi, alpha, 1.0, lengths, rng);
}

}  // namespace condet
