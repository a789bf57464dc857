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

#ifndef CONDET_PROVENANCE_HPP_
#define CONDET_PROVENANCE_HPP_

#include <cstdint>
#include <string>

namespace condet {

// Stamp written into every output file so a result can be traced back to
// the exact configuration and seed that produced it.
struct Provenance {
  std::string config_hash;
  std::uint64_t seed = 0;
};

// Header lines for text and CSV outputs ('#'-prefixed, newline-terminated).
std::string provenance_comment(const Provenance& p);

}  // namespace condet

#endif  // CONDET_PROVENANCE_HPP_
