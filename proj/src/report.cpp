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

#include "condet/report.hpp"

#include <algorithm>
#include <cstdio>

namespace condet {

std::string format_score(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", value);
  return buf;
}

std::string format_report_text(std::string_view title,
                               const std::vector<ReportRow>& rows) {
  std::size_t width = 6;
  for (const ReportRow& row : rows) {
    width = std::max(width, row.method.size());
  }
  width += 2;

  std::string out;
  if (!title.empty()) {
    out += title;
    out += "\n";
  }
  auto pad = [&](std::string_view text) {
    out += text;
    for (std::size_t i = text.size(); i < width; ++i) out += ' ';
  };
  pad("method");
  out += "  recall  precision      f1\n";
  for (const ReportRow& row : rows) {
    pad(row.method);
    out += "  " + format_score(row.result.recall);
    out += "     " + format_score(row.result.precision);
    out += "  " + format_score(row.result.f1);
    out += "\n";
  }
  return out;
}

std::string format_report_csv(const std::vector<ReportRow>& rows) {
  std::string out = "method,recall,precision,f1,tp,fp,fn\n";
  for (const ReportRow& row : rows) {
    out += row.method;
    out += "," + format_score(row.result.recall);
    out += "," + format_score(row.result.precision);
    out += "," + format_score(row.result.f1);
    out += "," + std::to_string(row.result.counts.tp);
    out += "," + std::to_string(row.result.counts.fp);
    out += "," + std::to_string(row.result.counts.fn);
    out += "\n";
  }
  return out;
}

}  // namespace condet
