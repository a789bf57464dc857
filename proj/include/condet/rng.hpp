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

#ifndef CONDET_RNG_HPP_
#define CONDET_RNG_HPP_

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace condet {

// Seeded generator with hand-rolled samplers. The standard library leaves
// distribution algorithms implementation-defined, so every transform from
// raw bits to a sample lives here and runs are reproducible across
// platforms and standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform draw in [0, 1), 53-bit resolution. Consumes one engine word.
  double uniform();

  // Uniform draw in (0, 1); rejects exact zero so logs and powers are safe.
  double uniform_pos();

  // Uniform integer in [0, n). Requires n >= 1.
  int uniform_int(int n);

  // Standard normal via Box-Muller. Consumes two engine words.
  double normal();

  // Gamma(shape, 1) via Marsaglia-Tsang squeeze; shape > 0.
  double gamma(double shape);

  // Symmetric Dirichlet draw of dimension n with concentration conc.
  std::vector<double> dirichlet(double conc, int n);

  // In-place Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (int i = static_cast<int>(v.size()) - 1; i > 0; --i) {
      int j = uniform_int(i + 1);
      std::swap(v[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(j)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

// Index sampled from unnormalized nonnegative weights given u in [0, 1).
// Scans the cumulative sum once; the last positive-weight index absorbs
// any floating-point shortfall.
int categorical_from_weights(std::span<const double> weights, double u);

}  // namespace condet

#endif  // CONDET_RNG_HPP_
