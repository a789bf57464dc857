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

#ifndef CONDET_MATH_HPP_
#define CONDET_MATH_HPP_

#include <cstdint>
#include <span>
#include <string_view>

namespace condet {

// Digamma (psi) function for x > 0, accurate to roughly 1e-13.
double digamma(double x);

// splitmix64 finalizer. Good avalanche; used for seed derivation and
// keyed counter draws.
std::uint64_t mix64(std::uint64_t x);

// FNV-1a 64-bit hash of a byte string.
std::uint64_t fnv1a64(std::string_view s);

// Maps a raw 64-bit word to a double in [0, 1) with 53 bits of precision.
double to_unit_double(std::uint64_t x);

}  // namespace condet

#endif  // CONDET_MATH_HPP_
