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

#include "condet/provenance.hpp"

#include "condet/version.hpp"

namespace condet {

std::string provenance_comment(const Provenance& p) {
  std::string out;
  out += "# ";
  out += kToolName;
  out += " ";
  out += kToolVersion;
  out += "\n# config ";
  out += p.config_hash.empty() ? "-" : p.config_hash;
  out += " seed ";
  out += std::to_string(p.seed);
  out += "\n";
  return out;
}

}  // namespace condet
