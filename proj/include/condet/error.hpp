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

#ifndef CONDET_ERROR_HPP_
#define CONDET_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace condet {

// Base class for every error the toolkit raises on purpose.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad flags, invalid option combinations, out-of-range parameters.
// The command line maps these to exit code 1.
class UsageError : public Error {
 public:
  explicit UsageError(const std::string& msg) : Error(msg) {}
};

// Malformed or inconsistent input files, mismatched corpora, unknown ids.
// The command line maps these to exit code 2.
class DataError : public Error {
 public:
  explicit DataError(const std::string& msg) : Error(msg) {}
};

// A query word that is not part of the corpus lexicon. Kept distinct so
// callers can tell "you asked about a word we never saw" from file damage.
class OovError : public DataError {
 public:
  explicit OovError(const std::string& word)
      : DataError("concept keyword not in lexicon: \"" + word + "\"") {}
};

// Degenerate statistics (undefined coefficients, empty denominators that
// have no convention). The command line maps these to exit code 3.
class NumericError : public Error {
 public:
  explicit NumericError(const std::string& msg) : Error(msg) {}
};

}  // namespace condet

#endif  // CONDET_ERROR_HPP_
