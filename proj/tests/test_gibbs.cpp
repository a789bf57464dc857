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

#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "condet/error.hpp"
#include "condet/synthetic.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

namespace condet {
namespace {

using testing::TempDir;

EncodedCorpus tiny_corpus() {
  // Two segments over a two-word vocabulary: [w0 w0] and [w0 w1].
  return make_corpus({"w0", "w1"}, {{"d0", {0, 0}}, {"d1", {0, 1}}});
}

EncodedCorpus medium_corpus() {
  const SyntheticCorpus s =
      generate_corpus({3, 0.3, 0.2}, 12, std::vector<int>(8, 20), 314);
  return s.corpus;
}

TEST_SUITE_BEGIN("gibbs");

TEST_CASE("init assigns every token and keeps tallies consistent") {
  const EncodedCorpus corpus = medium_corpus();
  const GibbsState state = gibbs_init(corpus, {3, 0.3, 0.2}, 5);
  CHECK(state.iteration == 0);
  check_counts(state, corpus);
  long long total = 0;
  for (long long c : state.n_k) total += c;
  CHECK(total == corpus.total_tokens());

  SUBCASE("single topic pins every assignment to zero") {
    const GibbsState k1 = gibbs_init(corpus, {1, 0.3, 0.2}, 5);
    for (const auto& doc : k1.z) {
      for (int t : doc) CHECK(t == 0);
    }
    CHECK(k1.n_k[0] == corpus.total_tokens());
  }

  SUBCASE("same seed reproduces the initial assignment") {
    const GibbsState again = gibbs_init(corpus, {3, 0.3, 0.2}, 5);
    CHECK(again.z == state.z);
    const GibbsState other = gibbs_init(corpus, {3, 0.3, 0.2}, 6);
    CHECK(other.z != state.z);
  }

  SUBCASE("a corpus with no tokens cannot be sampled") {
    const EncodedCorpus empty = make_corpus({"w"}, {{"d0", {}}});
    CHECK_THROWS_AS(gibbs_init(empty, {2, 0.3, 0.2}, 1), DataError);
  }
}

TEST_CASE("sweeps conserve tokens and stay tally-consistent") {
  const EncodedCorpus corpus = medium_corpus();
  GibbsState state = gibbs_init(corpus, {3, 0.3, 0.2}, 17);
  for (int i = 0; i < 10; ++i) {
    gibbs_sweep(state, corpus);
    check_counts(state, corpus);
    long long total = 0;
    for (long long c : state.n_k) total += c;
    CHECK(total == corpus.total_tokens());
  }
  CHECK(state.iteration == 10);
}

TEST_CASE("a single-topic sweep is the identity on assignments") {
  const EncodedCorpus corpus = medium_corpus();
  GibbsState state = gibbs_init(corpus, {1, 0.3, 0.2}, 3);
  const auto before = state.z;
  gibbs_sweep(state, corpus);
  CHECK(state.z == before);
}

TEST_CASE("sampled configurations match the enumerated posterior") {
  // Four tokens, sixteen complete assignments: the empirical distribution
  // over configurations, sampled once per sweep, must approach the exact
  // conditional computed by brute-force enumeration.
  const EncodedCorpus corpus = tiny_corpus();
  const Hyperparameters hyper{2, 0.8, 0.6};
  const std::vector<std::vector<int>> docs{{0, 0}, {0, 1}};
  const std::vector<double> exact =
      testing::enumerate_z_posterior(docs, 2, 2, hyper.alpha, hyper.beta);

  GibbsState state = gibbs_init(corpus, hyper, 2024);
  const int burn_in = 1000;
  const int samples = 200000;
  for (int i = 0; i < burn_in; ++i) gibbs_sweep(state, corpus);
  std::vector<long long> counts(16, 0);
  for (int i = 0; i < samples; ++i) {
    gibbs_sweep(state, corpus);
    ++counts[static_cast<size_t>(testing::z_config_index(state.z, 2))];
  }
  double tv = 0.0;
  for (int c = 0; c < 16; ++c) {
    const double freq = static_cast<double>(counts[static_cast<size_t>(c)]) /
                        samples;
    tv += std::abs(freq - exact[static_cast<size_t>(c)]);
  }
  tv /= 2.0;
  CHECK(tv <= 0.05);
}

TEST_CASE("segment storage order does not affect the chain") {
  // Draws are keyed by segment id, not position, and sweeps visit segments
  // in id order, so permuting the corpus permutes nothing but row order.
  const std::vector<EncodedSegment> forward{
      {"sa", {0, 1, 2}}, {"sb", {2, 2, 0}}, {"sc", {1, 0}}};
  std::vector<EncodedSegment> reversed(forward.rbegin(), forward.rend());
  const EncodedCorpus c1 = make_corpus({"x", "y", "z"}, forward);
  const EncodedCorpus c2 = make_corpus({"x", "y", "z"}, reversed);

  const GibbsRun r1 = gibbs_run(c1, {2, 0.5, 0.3}, 25, 99);
  const GibbsRun r2 = gibbs_run(c2, {2, 0.5, 0.3}, 25, 99);

  CHECK(max_abs_diff(r1.model.phi, r2.model.phi) == 0.0);
  for (const auto& seg : forward) {
    const int p1 = *c1.segment_pos(seg.id);
    const int p2 = *c2.segment_pos(seg.id);
    CHECK(r1.state.z[static_cast<size_t>(p1)] ==
          r2.state.z[static_cast<size_t>(p2)]);
    for (int t = 0; t < 2; ++t) {
      CHECK(r1.model.theta(p1, t) == r2.model.theta(p2, t));
    }
  }
}

TEST_CASE("run estimates are valid distributions") {
  const EncodedCorpus corpus = medium_corpus();
  const GibbsRun run = gibbs_run(corpus, {3, 0.3, 0.2}, 20, 8);
  run.model.validate();  // row-stochastic phi and theta
  CHECK(run.model.engine == "gibbs");
  CHECK(run.state.iteration == 20);
}

TEST_CASE("single-topic estimate is the smoothed unigram distribution") {
  const EncodedCorpus corpus = tiny_corpus();
  const double beta = 0.6;
  const GibbsRun run = gibbs_run(corpus, {1, 0.8, beta}, 5, 1);
  // w0 occurs three times, w1 once, four tokens, V=2.
  CHECK(run.model.phi(0, 0) ==
        doctest::Approx((3 + beta) / (4 + 2 * beta)).epsilon(1e-12));
  CHECK(run.model.phi(0, 1) ==
        doctest::Approx((1 + beta) / (4 + 2 * beta)).epsilon(1e-12));
}

TEST_CASE("averaging one extra sample equals one extra sweep") {
  const EncodedCorpus corpus = medium_corpus();
  const GibbsRun averaged =
      gibbs_run(corpus, {3, 0.3, 0.2}, 10, 4, /*average_samples=*/1);
  const GibbsRun longer = gibbs_run(corpus, {3, 0.3, 0.2}, 11, 4);
  CHECK(max_abs_diff(averaged.model.phi, longer.model.phi) <= 1e-15);
  CHECK(max_abs_diff(averaged.model.theta, longer.model.theta) <= 1e-15);
}

TEST_CASE("assignment_counts tallies the current z column") {
  const EncodedCorpus corpus =
      make_corpus({"w0", "w1", "unused"},
                  {{"d0", {0, 0, 1}}, {"d1", {1, 0}}});
  GibbsState state = gibbs_init(corpus, {3, 0.5, 0.2}, 21);
  for (int i = 0; i < 5; ++i) gibbs_sweep(state, corpus);

  for (int w = 0; w < 3; ++w) {
    // Direct tally straight from z.
    std::vector<long long> direct(3, 0);
    for (int d = 0; d < corpus.num_segments(); ++d) {
      const auto& tokens = corpus.segment(d).tokens;
      for (std::size_t j = 0; j < tokens.size(); ++j) {
        if (tokens[j] == w) {
          ++direct[static_cast<size_t>(
              state.z[static_cast<size_t>(d)][j])];
        }
      }
    }
    CHECK(assignment_counts(state, w) == direct);
  }

  const auto unused = assignment_counts(state, 2);
  CHECK(unused == std::vector<long long>(3, 0));
  long long w0_total = 0;
  for (long long c : assignment_counts(state, 0)) w0_total += c;
  CHECK(w0_total == 3);  // corpus frequency of w0
}

TEST_CASE("check_counts flags tampered tallies") {
  const EncodedCorpus corpus = medium_corpus();
  GibbsState state = gibbs_init(corpus, {3, 0.3, 0.2}, 2);
  check_counts(state, corpus);
  state.n_dk(0, 0) += 1;
  state.n_dk(0, 1) -= 1;
  CHECK_THROWS_AS(check_counts(state, corpus), DataError);
}

TEST_CASE("saved states resume exactly where the chain left off") {
  const EncodedCorpus corpus = medium_corpus();
  const Hyperparameters hyper{3, 0.3, 0.2};
  const GibbsRun full = gibbs_run(corpus, hyper, 15, 77);

  const GibbsRun partial = gibbs_run(corpus, hyper, 10, 77);
  TempDir tmp;
  save_gibbs_state(partial.state, tmp.file("state.json"));
  GibbsState resumed = load_gibbs_state(tmp.file("state.json"), corpus);
  CHECK(resumed.iteration == 10);
  CHECK(resumed.z == partial.state.z);
  check_counts(resumed, corpus);
  for (int i = 0; i < 5; ++i) gibbs_sweep(resumed, corpus);

  CHECK(resumed.z == full.state.z);
  const TopicModel estimate = gibbs_estimate(resumed, corpus);
  CHECK(max_abs_diff(estimate.phi, full.model.phi) == 0.0);
  CHECK(max_abs_diff(estimate.theta, full.model.theta) == 0.0);
}

TEST_CASE("state files are validated against the corpus on load") {
  const EncodedCorpus corpus = tiny_corpus();
  const GibbsRun run = gibbs_run(corpus, {2, 0.8, 0.6}, 3, 1);
  TempDir tmp;
  save_gibbs_state(run.state, tmp.file("state.json"));

  SUBCASE("shape mismatch") {
    const EncodedCorpus other =
        make_corpus({"w0", "w1"}, {{"d0", {0}}, {"d1", {0, 1}}});
    CHECK_THROWS_AS(load_gibbs_state(tmp.file("state.json"), other),
                    DataError);
  }
  SUBCASE("topic out of range") {
    std::string text = testing::read_file(tmp.file("state.json"));
    // K=2, so a topic id of 7 in z must be rejected.
    const auto pos = text.find("\"z\"");
    REQUIRE(pos != std::string::npos);
    const auto digit = text.find_first_of("01", pos);
    REQUIRE(digit != std::string::npos);
    text[digit] = '7';
    testing::write_file(tmp.file("bad.json"), text);
    CHECK_THROWS_AS(load_gibbs_state(tmp.file("bad.json"), corpus),
                    DataError);
  }
  SUBCASE("truncated file") {
    testing::write_file(tmp.file("trunc.json"), "{\"version\": 1, ");
    CHECK_THROWS_AS(load_gibbs_state(tmp.file("trunc.json"), corpus),
                    DataError);
  }
}

TEST_SUITE_END();

}  // namespace
}  // namespace condet
