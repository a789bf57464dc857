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

#include "condet/rng.hpp"

#include <cassert>
#include <cmath>

#include "condet/math.hpp"

namespace condet {

double Rng::uniform() { return to_unit_double(next_u64()); }

double Rng::uniform_pos() {
  double u = uniform();
  while (u == 0.0) u = uniform();
  return u;
}

int Rng::uniform_int(int n) {
  assert(n >= 1);
  int r = static_cast<int>(uniform() * n);
  return r >= n ? n - 1 : r;
}

double Rng::normal() {
  const double u1 = uniform_pos();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * 3.14159265358979323846 * u2);
}

double Rng::gamma(double shape) {
  assert(shape > 0.0);
  if (shape < 1.0) {
    // Boost: Gamma(a) = Gamma(a + 1) * U^(1/a).
    return gamma(shape + 1.0) * std::pow(uniform_pos(), 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x = normal();
    double t = 1.0 + c * x;
    if (t <= 0.0) continue;
    double v = t * t * t;
    double u = uniform_pos();
    if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) {
      return d * v;
    }
  }
}

std::vector<double> Rng::dirichlet(double conc, int n) {
  assert(n >= 1);
  std::vector<double> out(static_cast<std::size_t>(n));
  double total = 0.0;
  for (double& g : out) {
    g = gamma(conc);
    total += g;
  }
  // Gamma draws are strictly positive, so total > 0.
  for (double& g : out) g /= total;
  return out;
}

int categorical_from_weights(std::span<const double> weights, double u) {
  assert(!weights.empty());
  double total = 0.0;
  for (double w : weights) total += w;
  assert(total > 0.0);
  const double target = u * total;
  double cum = 0.0;
  int last_positive = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] > 0.0) last_positive = static_cast<int>(i);
    cum += weights[i];
    if (target < cum) return static_cast<int>(i);
  }
  return last_positive;
}

}  // namespace condet
