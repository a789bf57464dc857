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

#ifndef CONDET_VERSION_HPP_
#define CONDET_VERSION_HPP_

namespace condet {

inline constexpr const char* kToolName = "condet";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace condet

#endif  // CONDET_VERSION_HPP_
