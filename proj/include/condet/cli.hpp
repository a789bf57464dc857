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

#ifndef CONDET_CLI_HPP_
#define CONDET_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace condet::cli {

// Runs one toolkit command. args excludes the program name, e.g.
// {"train", "--engine", "gibbs", ...}. Returns the process exit code:
//   0 success, 1 usage problem, 2 data problem, 3 numeric/degenerate.
// All diagnostics go to err; results and summaries to out.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace condet::cli

#endif  // CONDET_CLI_HPP_
