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

// Reference implementations the test suite checks the library against.
// Everything here is written independently of the library internals:
// plain nested vectors, boost special functions, and brute force wherever
// brute force is affordable.

#ifndef CONDET_TESTS_ORACLES_HPP_
#define CONDET_TESTS_ORACLES_HPP_

#include <cstdint>
#include <vector>

#include "condet/matrix.hpp"

namespace condet::testing {

// log P(z, w | alpha, beta) with theta and phi integrated out:
//   prod_d Gamma(K a)/Gamma(N_d + K a) prod_k Gamma(n_dk + a)/Gamma(a)
// * prod_k Gamma(V b)/Gamma(n_k + V b) prod_w Gamma(n_kw + b)/Gamma(b)
// docs holds token ids; z the per-position topics, same shape.
double collapsed_log_joint(const std::vector<std::vector<int>>& docs,
                           const std::vector<std::vector<int>>& z, int K,
                           int V, double alpha, double beta);

// Index of a complete assignment in the K^N enumeration (first position
// is the most significant digit).
long long z_config_index(const std::vector<std::vector<int>>& z, int K);

// Exact posterior P(z | w) over all K^N complete configurations, indexed
// by z_config_index. Enumerates every configuration; keep N small.
std::vector<double> enumerate_z_posterior(
    const std::vector<std::vector<int>>& docs, int K, int V, double alpha,
    double beta);

// A document collapsed to (distinct word, count) pairs.
struct OracleDoc {
  std::vector<int> ids;
  std::vector<double> counts;
};
OracleDoc oracle_collapse(const std::vector<int>& tokens);

// Naive mean-field fixed point for one document with lambda frozen:
// gamma_k = alpha + sum_w count_w resp_wk, resp from exp(E[log theta] +
// E[log beta]) in linear space with boost digamma. Starts at
// alpha + N/K and stops when mean |delta gamma| / K < tol or after
// max_iter rounds.
std::vector<double> oracle_gamma(
    const std::vector<std::vector<double>>& lambda, const OracleDoc& doc,
    double alpha, double tol, int max_iter);

// One full batch-VB topic-parameter candidate:
//   lambda_hat = eta + (corpus_docs / docs.size()) * stats
// with stats accumulated from responsibilities recomputed at each
// document's final gamma.
std::vector<std::vector<double>> oracle_batch_lambda_hat(
    const std::vector<std::vector<double>>& lambda,
    const std::vector<OracleDoc>& docs, double alpha, double eta,
    long long corpus_docs, double tol, int max_iter);

// Position of the word in the descending-probability, tie-by-id word
// list: strictly greater entries + equal entries with a smaller id + 1.
int oracle_list_position(const std::vector<double>& phi_row, int word);

// Competition rank: strictly greater entries + 1, ties share the rank.
int oracle_competition_rank(const std::vector<double>& phi_row, int word);

// P(X >= a0) where X counts the overlap between a fixed k1-subset and a
// uniformly random k2-subset of an n-element set.
double hypergeometric_tail(long long n, long long k1, long long k2,
                           long long a0);

// Greedily pairs learned topics with true topics, smallest L1 distance
// first, and returns the mean per-topic L1 over the K matched pairs.
double greedy_matched_mean_l1(const MatD& truth, const MatD& learned);

}  // namespace condet::testing

#endif  // CONDET_TESTS_ORACLES_HPP_
