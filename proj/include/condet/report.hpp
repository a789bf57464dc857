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

#ifndef CONDET_REPORT_HPP_
#define CONDET_REPORT_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "condet/eval.hpp"

namespace condet {

struct ReportRow {
  std::string method;
  PrfResult result;
};

// Aligned text table: one row per method, columns recall / precision / f1.
std::string format_report_text(std::string_view title,
                               const std::vector<ReportRow>& rows);

// Same content as CSV with a header row; counts included for transparency.
std::string format_report_csv(const std::vector<ReportRow>& rows);

// Fixed-width decimal used across reports so output is byte-stable.
std::string format_score(double value);

}  // namespace condet

#endif  // CONDET_REPORT_HPP_
