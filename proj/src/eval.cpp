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

#include "condet/eval.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <tuple>

#include "condet/error.hpp"
#include "condet/rng.hpp"

namespace condet {

namespace {

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

bool is_blank_or_comment(const std::string& line) {
  for (char c : line) {
    if (c == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

// Minimal CSV field splitter with double-quote escaping.
std::vector<std::string> split_csv_line(const std::string& line,
                                        const std::string& where) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (quoted) {
    throw DataError(where + ": unterminated quoted field");
  }
  fields.push_back(cur);
  return fields;
}

void expect_header(const std::vector<std::string>& fields,
                   const std::vector<std::string>& expected,
                   const std::string& where) {
  bool ok = fields.size() == expected.size();
  for (std::size_t i = 0; ok && i < fields.size(); ++i) {
    ok = fold_case(fields[i]) == expected[i];
  }
  if (!ok) {
    std::string want;
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) want += ",";
      want += expected[i];
    }
    throw DataError(where + ": expected header \"" + want + "\"");
  }
}

int parse_rating(const std::string& raw, const std::string& where) {
  const std::string folded = fold_case(raw);
  if (folded == "present") return 4;
  if (folded == "absent") return 1;
  try {
    std::size_t used = 0;
    const int r = std::stoi(folded, &used);
    if (used == folded.size() && r >= 1 && r <= 4) return r;
  } catch (const std::exception&) {
  }
  throw DataError(where + ": rating must be 1..4 or present/absent, got \"" +
                  raw + "\"");
}

}  // namespace

std::vector<RatingRecord> load_rating_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw DataError("cannot open file: " + path.string());
  }
  std::vector<RatingRecord> records;
  std::set<std::tuple<std::string, std::string, std::string>> seen;
  bool header_done = false;
  std::string line;
  long long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (is_blank_or_comment(line)) continue;
    const std::string where =
        path.filename().string() + " line " + std::to_string(line_no);
    const std::vector<std::string> fields = split_csv_line(line, where);
    if (!header_done) {
      expect_header(fields,
                    {"segment_id", "concept", "rater_id", "rating",
                     "rater_group"},
                    where);
      header_done = true;
      continue;
    }
    if (fields.size() != 5) {
      throw DataError(where + ": expected 5 fields, got " +
                      std::to_string(fields.size()));
    }
    RatingRecord r;
    r.segment_id = fields[0];
    r.concept_name = fields[1];
    r.rater_id = fields[2];
    r.rating = parse_rating(fields[3], where);
    r.rater_group = fields[4];
    if (r.segment_id.empty() || r.concept_name.empty() || r.rater_id.empty()) {
      throw DataError(where + ": empty segment, concept or rater field");
    }
    if (!seen.insert({r.segment_id, r.concept_name, r.rater_id}).second) {
      throw DataError(where + ": duplicate rating for segment \"" +
                      r.segment_id + "\", concept \"" + r.concept_name +
                      "\", rater \"" + r.rater_id + "\"");
    }
    records.push_back(std::move(r));
  }
  if (!header_done) {
    throw DataError(path.string() + ": missing header row");
  }
  if (records.empty()) {
    throw DataError(path.string() + ": no rating records");
  }
  return records;
}

bool rating_present(int rating) { return rating >= 2; }

GoldStandard build_gold(const std::vector<RatingRecord>& records,
                        GoldAggregation aggregation) {
  if (records.empty()) {
    throw DataError("no rating records to aggregate");
  }
  std::map<std::pair<std::string, std::string>, std::pair<int, int>> tallies;
  for (const RatingRecord& r : records) {
    auto& t = tallies[{r.segment_id, r.concept_name}];
    if (rating_present(r.rating)) {
      ++t.first;
    } else {
      ++t.second;
    }
  }
  GoldStandard gold;
  for (const auto& [pair, t] : tallies) {
    const auto [present, absent] = t;
    bool label = false;
    switch (aggregation) {
      case GoldAggregation::kMajorityTiePresent:
        label = present >= absent;
        break;
      case GoldAggregation::kAnyPresent:
        label = present > 0;
        break;
      case GoldAggregation::kAllPresent:
        label = absent == 0;
        break;
    }
    gold.labels.emplace(pair, label);
  }
  return gold;
}

PrfResult prf_from_counts(const PrfCounts& counts) {
  PrfResult r;
  r.counts = counts;
  const long long pred = counts.tp + counts.fp;
  const long long gold = counts.tp + counts.fn;
  r.precision = pred > 0 ? static_cast<double>(counts.tp) / pred : 0.0;
  r.recall = gold > 0 ? static_cast<double>(counts.tp) / gold : 0.0;
  r.f1 = (r.precision + r.recall) > 0.0
             ? 2.0 * r.precision * r.recall / (r.precision + r.recall)
             : 0.0;
  return r;
}

PrfResult prf(const PairSet& predicted, const GoldStandard& gold) {
  PrfCounts counts;
  for (const auto& [pair, present] : gold.labels) {
    const bool hit = predicted.count(pair) > 0;
    if (present && hit) {
      ++counts.tp;
    } else if (!present && hit) {
      ++counts.fp;
    } else if (present && !hit) {
      ++counts.fn;
    }
  }
  return prf_from_counts(counts);
}

PrfResult prf_macro(const PairSet& predicted, const GoldStandard& gold) {
  std::map<std::string, PrfCounts> per_concept;
  for (const auto& [pair, present] : gold.labels) {
    PrfCounts& counts = per_concept[pair.second];
    const bool hit = predicted.count(pair) > 0;
    if (present && hit) {
      ++counts.tp;
    } else if (!present && hit) {
      ++counts.fp;
    } else if (present && !hit) {
      ++counts.fn;
    }
  }
  PrfResult out;
  if (per_concept.empty()) return out;
  for (const auto& [concept_name, counts] : per_concept) {
    (void)concept_name;
    const PrfResult one = prf_from_counts(counts);
    out.precision += one.precision;
    out.recall += one.recall;
    out.f1 += one.f1;
    out.counts.tp += counts.tp;
    out.counts.fp += counts.fp;
    out.counts.fn += counts.fn;
  }
  const double m = static_cast<double>(per_concept.size());
  out.precision /= m;
  out.recall /= m;
  out.f1 /= m;
  return out;
}

ContingencyTable join_gold(const GoldStandard& r1, const GoldStandard& r2) {
  ContingencyTable t;
  for (const auto& [pair, first] : r1.labels) {
    const auto it = r2.labels.find(pair);
    if (it == r2.labels.end()) continue;
    const bool second = it->second;
    if (first && second) {
      ++t.a;
    } else if (first && !second) {
      ++t.b;
    } else if (!first && second) {
      ++t.c;
    } else {
      ++t.d;
    }
  }
  if (t.n() == 0) {
    throw DataError("gold standards share no rated (segment, concept) pairs");
  }
  return t;
}

double gwet_ac1(const ContingencyTable& table) {
  const long long n = table.n();
  if (n == 0) {
    throw NumericError("agreement undefined on an empty table");
  }
  const double nn = static_cast<double>(n);
  const double pa = static_cast<double>(table.a + table.d) / nn;
  const double p1 = static_cast<double>(table.a + table.b) / nn;
  const double p2 = static_cast<double>(table.a + table.c) / nn;
  const double pi = (p1 + p2) / 2.0;
  const double pe = 2.0 * pi * (1.0 - pi);
  if (std::abs(1.0 - pe) < 1e-12) {
    throw NumericError("agreement undefined: chance agreement equals 1");
  }
  return (pa - pe) / (1.0 - pe);
}

double cohen_kappa(const ContingencyTable& table) {
  const long long n = table.n();
  if (n == 0) {
    throw NumericError("agreement undefined on an empty table");
  }
  const double nn = static_cast<double>(n);
  const double pa = static_cast<double>(table.a + table.d) / nn;
  const double p1 = static_cast<double>(table.a + table.b) / nn;
  const double p2 = static_cast<double>(table.a + table.c) / nn;
  const double pe = p1 * p2 + (1.0 - p1) * (1.0 - p2);
  if (std::abs(1.0 - pe) < 1e-12) {
    throw NumericError("kappa undefined: chance agreement equals 1");
  }
  return (pa - pe) / (1.0 - pe);
}

double ac1_pvalue(const ContingencyTable& table, long long n_perm,
                  std::uint64_t seed) {
  if (n_perm < 1000) {
    throw UsageError("permutation count must be at least 1000");
  }
  const double observed = gwet_ac1(table);
  const long long n = table.n();

  // Lay the table out as aligned label vectors and shuffle one side.
  std::vector<char> r1;
  std::vector<char> r2;
  r1.reserve(static_cast<std::size_t>(n));
  r2.reserve(static_cast<std::size_t>(n));
  auto push = [&](long long count, bool first, bool second) {
    for (long long i = 0; i < count; ++i) {
      r1.push_back(first ? 1 : 0);
      r2.push_back(second ? 1 : 0);
    }
  };
  push(table.a, true, true);
  push(table.b, true, false);
  push(table.c, false, true);
  push(table.d, false, false);

  Rng rng(seed);
  long long at_or_above = 0;
  std::vector<char> shuffled = r2;
  for (long long p = 0; p < n_perm; ++p) {
    for (int i = static_cast<int>(shuffled.size()) - 1; i > 0; --i) {
      const int j = rng.uniform_int(i + 1);
      std::swap(shuffled[static_cast<std::size_t>(i)],
                shuffled[static_cast<std::size_t>(j)]);
    }
    ContingencyTable perm;
    for (std::size_t i = 0; i < r1.size(); ++i) {
      if (r1[i] && shuffled[i]) {
        ++perm.a;
      } else if (r1[i] && !shuffled[i]) {
        ++perm.b;
      } else if (!r1[i] && shuffled[i]) {
        ++perm.c;
      } else {
        ++perm.d;
      }
    }
    if (gwet_ac1(perm) >= observed) ++at_or_above;
  }
  return static_cast<double>(at_or_above + 1) /
         static_cast<double>(n_perm + 1);
}

std::vector<TagRecord> load_tag_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw DataError("cannot open file: " + path.string());
  }
  std::vector<TagRecord> records;
  std::set<std::tuple<std::string, std::string, std::string>> seen;
  bool header_done = false;
  std::string line;
  long long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (is_blank_or_comment(line)) continue;
    const std::string where =
        path.filename().string() + " line " + std::to_string(line_no);
    const std::vector<std::string> fields = split_csv_line(line, where);
    if (!header_done) {
      expect_header(fields, {"segment_id", "concept", "rater_id"}, where);
      header_done = true;
      continue;
    }
    if (fields.size() != 3) {
      throw DataError(where + ": expected 3 fields, got " +
                      std::to_string(fields.size()));
    }
    TagRecord r{fields[0], fields[1], fields[2]};
    if (r.segment_id.empty() || r.concept_name.empty() || r.rater_id.empty()) {
      throw DataError(where + ": empty segment, concept or rater field");
    }
    if (!seen.insert({r.segment_id, r.concept_name, r.rater_id}).second) {
      throw DataError(where + ": duplicate tag for segment \"" +
                      r.segment_id + "\", concept \"" + r.concept_name +
                      "\", rater \"" + r.rater_id + "\"");
    }
    records.push_back(std::move(r));
  }
  if (!header_done) {
    throw DataError(path.string() + ": missing header row");
  }
  if (records.empty()) {
    throw DataError(path.string() + ": no tag records");
  }
  return records;
}

double reuse_rate(const std::vector<TagRecord>& tags,
                  const EncodedCorpus& corpus) {
  long long single_word = 0;
  long long found = 0;
  for (const TagRecord& tag : tags) {
    bool multi = tag.concept_name.empty();
    for (char c : tag.concept_name) {
      if (std::isspace(static_cast<unsigned char>(c))) {
        multi = true;
        break;
      }
    }
    if (multi) continue;
    ++single_word;

    const auto pos = corpus.segment_pos(tag.segment_id);
    if (!pos) {
      throw DataError("tag references unknown segment \"" + tag.segment_id +
                      "\"");
    }
    const auto id = keyword_lookup(corpus, tag.concept_name);
    if (id && keyword_occurs(corpus, *id, *pos)) ++found;
  }
  if (single_word == 0) {
    throw NumericError("reuse rate undefined: no single-word tags");
  }
  return static_cast<double>(found) / static_cast<double>(single_word);
}

KeywordSplit split_by_keyword(const PairSet& predicted,
                              const GoldStandard& gold,
                              const EncodedCorpus& corpus) {
  PrfCounts with_kw;
  PrfCounts without_kw;
  KeywordSplit out;
  for (const auto& [pair, present] : gold.labels) {
    const auto& [segment_id, concept_name] = pair;
    const auto pos = corpus.segment_pos(segment_id);
    if (!pos) {
      throw DataError("gold standard references unknown segment \"" +
                      segment_id + "\"");
    }
    const auto id = keyword_lookup(corpus, concept_name);
    const bool keyword_here = id && keyword_occurs(corpus, *id, *pos);
    PrfCounts& counts = keyword_here ? with_kw : without_kw;
    if (keyword_here) {
      ++out.pairs_with;
    } else {
      ++out.pairs_without;
    }
    const bool hit = predicted.count(pair) > 0;
    if (present && hit) {
      ++counts.tp;
    } else if (!present && hit) {
      ++counts.fp;
    } else if (present && !hit) {
      ++counts.fn;
    }
  }
  out.with_keyword = prf_from_counts(with_kw);
  out.without_keyword = prf_from_counts(without_kw);
  return out;
}

}  // namespace condet
