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

#ifndef CONDET_EVAL_HPP_
#define CONDET_EVAL_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "condet/corpus.hpp"

namespace condet {

// One annotation from the rating step. Ratings run 1 (absent) to 4
// (present); binary "present"/"absent" files are internalized as 4 and 1.
struct RatingRecord {
  std::string segment_id;
  std::string concept_name;
  std::string rater_id;
  int rating = 0;
  std::string rater_group;
};

// CSV with header: segment_id,concept,rater_id,rating,rater_group
// One (segment, concept, rater) triple may appear only once.
std::vector<RatingRecord> load_rating_csv(const std::filesystem::path& path);

// A rating asserts presence when it is 2 or higher.
bool rating_present(int rating);

enum class GoldAggregation {
  kMajorityTiePresent,  // present wins ties (default)
  kAnyPresent,
  kAllPresent,
};

// (segment id, concept) -> present. Ordered so iteration is deterministic.
struct GoldStandard {
  std::map<std::pair<std::string, std::string>, bool> labels;
};

GoldStandard build_gold(const std::vector<RatingRecord>& records,
                        GoldAggregation aggregation);

using PairSet = std::set<std::pair<std::string, std::string>>;

struct PrfCounts {
  long long tp = 0;
  long long fp = 0;
  long long fn = 0;
};

struct PrfResult {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  PrfCounts counts;
};

PrfResult prf_from_counts(const PrfCounts& counts);

// Micro-averaged scores over the pairs the gold standard declares.
// Predicted pairs outside the gold standard are ignored; empty
// denominators yield 0 by convention.
PrfResult prf(const PairSet& predicted, const GoldStandard& gold);

// Per-concept scores averaged with equal concept weight.
PrfResult prf_macro(const PairSet& predicted, const GoldStandard& gold);

// 2x2 agreement table. a: both present, b: only rater 1, c: only rater 2,
// d: both absent.
struct ContingencyTable {
  long long a = 0;
  long long b = 0;
  long long c = 0;
  long long d = 0;
  long long n() const { return a + b + c + d; }
};

// Inner join of two gold standards on (segment, concept); DataError when
// the join is empty.
ContingencyTable join_gold(const GoldStandard& r1, const GoldStandard& r2);

// Gwet's first-order agreement coefficient:
//   AC1 = (p_a - p_e) / (1 - p_e)
//   p_a = (a + d) / n,  pi = ((a+b)/n + (a+c)/n) / 2,  p_e = 2 pi (1 - pi)
double gwet_ac1(const ContingencyTable& table);

// Cohen's kappa on the same table, for comparison with skew-sensitive
// chance correction.
double cohen_kappa(const ContingencyTable& table);

// One-sided permutation test: rater-2 labels are shuffled against rater-1
// labels n_perm times and p is the smoothed fraction of permuted AC1
// values at or above the observed one. Requires n_perm >= 1000.
double ac1_pvalue(const ContingencyTable& table, long long n_perm,
                  std::uint64_t seed);

// One tag from the tagging step.
struct TagRecord {
  std::string segment_id;
  std::string concept_name;
  std::string rater_id;
};

// CSV with header: segment_id,concept,rater_id
std::vector<TagRecord> load_tag_csv(const std::filesystem::path& path);

// Of the tags that are a single word, the fraction whose word actually
// occurs in the tagged segment. Multi-word tags are left out entirely;
// no single-word tags at all is a NumericError.
double reuse_rate(const std::vector<TagRecord>& tags,
                  const EncodedCorpus& corpus);

// Scores recomputed separately for gold pairs whose segment contains the
// concept's keyword and for those where it does not.
struct KeywordSplit {
  PrfResult with_keyword;
  PrfResult without_keyword;
  long long pairs_with = 0;
  long long pairs_without = 0;
};

KeywordSplit split_by_keyword(const PairSet& predicted,
                              const GoldStandard& gold,
                              const EncodedCorpus& corpus);

}  // namespace condet

#endif  // CONDET_EVAL_HPP_
