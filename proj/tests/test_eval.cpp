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

#include <doctest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "condet/error.hpp"
#include "condet/rng.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

namespace condet {
namespace {

using testing::TempDir;
using testing::fixture;
using testing::write_file;

constexpr const char* kRatingHeader =
    "segment_id,concept,rater_id,rating,rater_group\n";

GoldStandard gold_from(
    const std::vector<std::pair<std::pair<std::string, std::string>, bool>>&
        entries) {
  GoldStandard gold;
  for (const auto& e : entries) gold.labels.insert(e);
  return gold;
}

TEST_SUITE_BEGIN("eval");

TEST_CASE("rating files parse both numeric and literal scales") {
  TempDir tmp;
  write_file(tmp.file("r.csv"),
             std::string(kRatingHeader) +
                 "s1,chat,r1,4,crowd\n"
                 "s1,chat,r2,present,expert\n"
                 "s2,\"black cat\",r1,1,crowd\n"
                 "# a comment line\n"
                 "\n"
                 "s2,chat,r1,absent,expert\n");
  const auto records = load_rating_csv(tmp.file("r.csv"));
  REQUIRE(records.size() == 4);
  CHECK(records[0].segment_id == "s1");
  CHECK(records[0].concept_name == "chat");
  CHECK(records[0].rating == 4);
  CHECK(records[1].rating == 4);  // "present" maps to the top rating
  CHECK(records[2].concept_name == "black cat");
  CHECK(records[2].rating == 1);
  CHECK(records[3].rating == 1);  // "absent" maps to the bottom rating
  CHECK(records[3].rater_group == "expert");
}

TEST_CASE("rating files reject malformed content with line numbers") {
  TempDir tmp;

  SUBCASE("wrong header") {
    write_file(tmp.file("r.csv"), "segment,concept\ns1,c,r,1,g\n");
    CHECK_THROWS_AS(load_rating_csv(tmp.file("r.csv")), DataError);
  }
  SUBCASE("rating out of range") {
    write_file(tmp.file("r.csv"),
               std::string(kRatingHeader) + "s1,chat,r1,5,crowd\n");
    CHECK_THROWS_WITH_AS(load_rating_csv(tmp.file("r.csv")),
                         doctest::Contains("line 2"), DataError);
  }
  SUBCASE("duplicate (segment, concept, rater) triple") {
    write_file(tmp.file("r.csv"), std::string(kRatingHeader) +
                                      "s1,chat,r1,4,crowd\n"
                                      "s1,chat,r1,2,crowd\n");
    CHECK_THROWS_WITH_AS(load_rating_csv(tmp.file("r.csv")),
                         doctest::Contains("line 3"), DataError);
  }
  SUBCASE("empty fields") {
    write_file(tmp.file("r.csv"),
               std::string(kRatingHeader) + "s1,,r1,4,crowd\n");
    CHECK_THROWS_AS(load_rating_csv(tmp.file("r.csv")), DataError);
  }
  SUBCASE("no records at all") {
    write_file(tmp.file("r.csv"), kRatingHeader);
    CHECK_THROWS_AS(load_rating_csv(tmp.file("r.csv")), DataError);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(load_rating_csv(tmp.file("absent.csv")), DataError);
  }
}

TEST_CASE("windows line endings are tolerated") {
  TempDir tmp;
  write_file(tmp.file("r.csv"),
             "segment_id,concept,rater_id,rating,rater_group\r\n"
             "s1,chat,r1,4,crowd\r\n");
  const auto records = load_rating_csv(tmp.file("r.csv"));
  REQUIRE(records.size() == 1);
  CHECK(records[0].rater_group == "crowd");
}

TEST_CASE("a rating of one means absent, anything higher present") {
  CHECK(!rating_present(1));
  CHECK(rating_present(2));
  CHECK(rating_present(3));
  CHECK(rating_present(4));
}

TEST_CASE("gold aggregation rules") {
  const auto record = [](const std::string& seg, const std::string& rater,
                         int rating) {
    RatingRecord r;
    r.segment_id = seg;
    r.concept_name = "chat";
    r.rater_id = rater;
    r.rating = rating;
    r.rater_group = "crowd";
    return r;
  };

  SUBCASE("single raters follow the binarization rule") {
    const GoldStandard gold = build_gold(
        {record("s1", "r1", 1), record("s2", "r1", 3)},
        GoldAggregation::kMajorityTiePresent);
    CHECK(gold.labels.at({"s1", "chat"}) == false);
    CHECK(gold.labels.at({"s2", "chat"}) == true);
  }
  SUBCASE("majority with ties leaning present") {
    const GoldStandard gold = build_gold(
        {record("s1", "r1", 1), record("s1", "r2", 4),
         record("s2", "r1", 1), record("s2", "r2", 1), record("s2", "r3", 4)},
        GoldAggregation::kMajorityTiePresent);
    CHECK(gold.labels.at({"s1", "chat"}) == true);   // 1-1 tie -> present
    CHECK(gold.labels.at({"s2", "chat"}) == false);  // 2-1 absent
  }
  SUBCASE("any-present and all-present") {
    const std::vector<RatingRecord> records{
        record("s1", "r1", 1), record("s1", "r2", 4), record("s1", "r3", 1)};
    CHECK(build_gold(records, GoldAggregation::kAnyPresent)
              .labels.at({"s1", "chat"}) == true);
    CHECK(build_gold(records, GoldAggregation::kAllPresent)
              .labels.at({"s1", "chat"}) == false);
  }
  SUBCASE("empty record set is an error") {
    CHECK_THROWS_AS(build_gold({}, GoldAggregation::kMajorityTiePresent),
                    DataError);
  }
}

TEST_CASE("precision, recall and F1 over declared pairs") {
  const GoldStandard gold = gold_from({{{"a", "c"}, true},
                                       {{"b", "c"}, true},
                                       {{"c", "c"}, false}});

  SUBCASE("predicting exactly the present pairs is perfect") {
    const PairSet predicted{{"a", "c"}, {"b", "c"}};
    const PrfResult r = prf(predicted, gold);
    CHECK(r.precision == doctest::Approx(1.0));
    CHECK(r.recall == doctest::Approx(1.0));
    CHECK(r.f1 == doctest::Approx(1.0));
  }
  SUBCASE("predicting nothing scores zero by convention") {
    const PrfResult r = prf({}, gold);
    CHECK(r.precision == 0.0);
    CHECK(r.recall == 0.0);
    CHECK(r.f1 == 0.0);
  }
  SUBCASE("half right, half wrong") {
    const PairSet predicted{{"a", "c"}, {"c", "c"}};
    const PrfResult r = prf(predicted, gold);
    CHECK(r.precision == doctest::Approx(0.5));
    CHECK(r.recall == doctest::Approx(0.5));
    CHECK(r.f1 == doctest::Approx(0.5));
    CHECK(r.counts.tp == 1);
    CHECK(r.counts.fp == 1);
    CHECK(r.counts.fn == 1);
  }
  SUBCASE("pairs the gold standard never declared are ignored") {
    const PairSet predicted{{"a", "c"}, {"zzz", "c"}};
    const PrfResult r = prf(predicted, gold);
    CHECK(r.counts.fp == 0);
    CHECK(r.precision == doctest::Approx(1.0));
  }
  SUBCASE("adding a true positive never lowers recall") {
    const PairSet fewer{{"a", "c"}};
    PairSet more = fewer;
    more.emplace("b", "c");
    CHECK(prf(more, gold).recall >= prf(fewer, gold).recall);
  }
}

TEST_CASE("macro scores weight concepts equally") {
  const GoldStandard gold = gold_from({{{"s1", "x"}, true},
                                       {{"s2", "x"}, true},
                                       {{"s1", "y"}, true},
                                       {{"s2", "y"}, false}});
  const PairSet predicted{{"s1", "x"}, {"s1", "y"}, {"s2", "y"}};

  const PrfResult micro = prf(predicted, gold);
  CHECK(micro.precision == doctest::Approx(2.0 / 3));
  CHECK(micro.recall == doctest::Approx(2.0 / 3));
  CHECK(micro.f1 == doctest::Approx(2.0 / 3));

  const PrfResult macro = prf_macro(predicted, gold);
  CHECK(macro.precision == doctest::Approx(0.75));
  CHECK(macro.recall == doctest::Approx(0.75));
  CHECK(macro.f1 == doctest::Approx(2.0 / 3));
  CHECK(macro.counts.tp == micro.counts.tp);
  CHECK(macro.counts.fp == micro.counts.fp);
  CHECK(macro.counts.fn == micro.counts.fn);
}

TEST_CASE("agreement coefficient on the reference contingency table") {
  const ContingencyTable table{32, 2, 24, 4};
  const double ac1 = gwet_ac1(table);
  CHECK(ac1 == doctest::Approx(27.0 / 89).epsilon(1e-12));
  CHECK(std::abs(ac1 - 0.30) <= 0.005);
  CHECK(cohen_kappa(table) == doctest::Approx(40.0 / 443).epsilon(1e-12));
}

TEST_CASE("agreement coefficient edge cases") {
  CHECK(gwet_ac1({10, 0, 0, 10}) == doctest::Approx(1.0));
  CHECK(gwet_ac1({5, 5, 5, 5}) == doctest::Approx(0.0));

  SUBCASE("swapping the raters transposes the table harmlessly") {
    const ContingencyTable t{7, 9, 2, 13};
    CHECK(gwet_ac1({7, 2, 9, 13}) == doctest::Approx(gwet_ac1(t)));
    CHECK(cohen_kappa({7, 2, 9, 13}) == doctest::Approx(cohen_kappa(t)));
  }
  SUBCASE("relabeling present and absent for both raters is harmless") {
    const ContingencyTable t{7, 9, 2, 13};
    CHECK(gwet_ac1({13, 2, 9, 7}) == doctest::Approx(gwet_ac1(t)));
  }
  SUBCASE("empty tables are degenerate") {
    CHECK_THROWS_AS(gwet_ac1({0, 0, 0, 0}), NumericError);
  }
  SUBCASE("kappa is undefined when both raters are constant") {
    CHECK_THROWS_AS(cohen_kappa({10, 0, 0, 0}), NumericError);
  }
}

TEST_CASE("permutation p-value behaves like a significance test") {
  SUBCASE("perfect agreement is highly significant") {
    CHECK(ac1_pvalue({10, 0, 0, 10}, 10000, 7) <= 0.01);
  }
  SUBCASE("the reference table sits far from significance") {
    // With both margins fixed, the number of both-present items under a
    // label shuffle is hypergeometric, so the exact tail is known.
    const double exact = testing::hypergeometric_tail(62, 34, 56, 32);
    CHECK(exact == doctest::Approx(0.2473339).epsilon(1e-6));
    const double p = ac1_pvalue({32, 2, 24, 4}, 10000, 13);
    CHECK(std::abs(p - exact) < 0.02);
  }
  SUBCASE("p-values are reproducible for a fixed seed") {
    CHECK(ac1_pvalue({32, 2, 24, 4}, 2000, 5) ==
          ac1_pvalue({32, 2, 24, 4}, 2000, 5));
  }
  SUBCASE("null tables almost never look significant") {
    // Draw rater 2 from the permutation null itself. The test statistic
    // is discrete, so p-values are conservative (stochastically at least
    // uniform): they must not cluster near zero.
    std::vector<double> pvalues;
    for (int trial = 0; trial < 21; ++trial) {
      std::vector<int> r2(40, 0);
      for (int i = 0; i < 20; ++i) r2[static_cast<size_t>(i)] = 1;
      Rng rng(9000 + static_cast<std::uint64_t>(trial));
      rng.shuffle(r2);
      ContingencyTable t;
      for (int i = 0; i < 40; ++i) {
        const bool p1 = i < 20;  // rater 1: first half present
        const bool p2 = r2[static_cast<size_t>(i)] == 1;
        if (p1 && p2) ++t.a;
        if (p1 && !p2) ++t.b;
        if (!p1 && p2) ++t.c;
        if (!p1 && !p2) ++t.d;
      }
      pvalues.push_back(ac1_pvalue(t, 2000, 17 + trial));
    }
    std::sort(pvalues.begin(), pvalues.end());
    const double median = pvalues[pvalues.size() / 2];
    CHECK(median >= 0.3);
    const long long below_alpha = std::count_if(
        pvalues.begin(), pvalues.end(), [](double p) { return p < 0.05; });
    CHECK(below_alpha <= 2);
  }
  SUBCASE("too few permutations is a usage error") {
    CHECK_THROWS_AS(ac1_pvalue({10, 0, 0, 10}, 999, 1), UsageError);
  }
}

TEST_CASE("gold standards join into a contingency table") {
  const GoldStandard g1 = gold_from({{{"s1", "c"}, true},
                                     {{"s2", "c"}, true},
                                     {{"s3", "c"}, false},
                                     {{"s4", "c"}, false},
                                     {{"s5", "x"}, true}});
  const GoldStandard g2 = gold_from({{{"s1", "c"}, true},
                                     {{"s2", "c"}, false},
                                     {{"s3", "c"}, true},
                                     {{"s4", "c"}, false},
                                     {{"s9", "y"}, true}});
  const ContingencyTable t = join_gold(g1, g2);
  CHECK(t.a == 1);
  CHECK(t.b == 1);
  CHECK(t.c == 1);
  CHECK(t.d == 1);
  CHECK(t.n() == 4);

  const GoldStandard disjoint = gold_from({{{"zz", "q"}, true}});
  CHECK_THROWS_AS(join_gold(g1, disjoint), DataError);
}

TEST_CASE("fixture rating files reproduce the reference table") {
  const GoldStandard experts =
      build_gold(load_rating_csv(fixture("ratings_expert.csv")),
                 GoldAggregation::kMajorityTiePresent);
  const GoldStandard crowd =
      build_gold(load_rating_csv(fixture("ratings_crowd.csv")),
                 GoldAggregation::kMajorityTiePresent);
  const ContingencyTable t = join_gold(experts, crowd);
  CHECK(t.a == 32);
  CHECK(t.b == 2);
  CHECK(t.c == 24);
  CHECK(t.d == 4);
  CHECK(gwet_ac1(t) == doctest::Approx(27.0 / 89).epsilon(1e-12));
}

TEST_CASE("tag files parse and reuse rate counts verbatim single words") {
  const EncodedCorpus corpus = make_corpus(
      {"chat", "noir", "dort"},
      {{"seg-a", {0, 1, 2}}, {"seg-b", {0}}, {"seg-c", {1, 1}}});

  SUBCASE("fixture tags give one third") {
    IngestOptions options;
    options.stopwords = load_stopwords(fixture("stopwords.txt"));
    const EncodedCorpus small =
        ingest_file(fixture("corpus_small.jsonl"), options);
    const auto tags = load_tag_csv(fixture("tags_small.csv"));
    REQUIRE(tags.size() == 4);
    CHECK(reuse_rate(tags, small) == doctest::Approx(1.0 / 3));
  }
  SUBCASE("all tags reused verbatim") {
    const std::vector<TagRecord> tags{{"seg-a", "chat", "r1"},
                                      {"seg-c", "noir", "r1"}};
    CHECK(reuse_rate(tags, corpus) == doctest::Approx(1.0));
  }
  SUBCASE("no tag reused") {
    const std::vector<TagRecord> tags{{"seg-b", "noir", "r1"},
                                      {"seg-c", "dort", "r1"}};
    CHECK(reuse_rate(tags, corpus) == doctest::Approx(0.0));
  }
  SUBCASE("multi-word tags are left out of the ratio") {
    const std::vector<TagRecord> tags{{"seg-a", "chat noir", "r1"},
                                      {"seg-a", "chat", "r1"}};
    CHECK(reuse_rate(tags, corpus) == doctest::Approx(1.0));
  }
  SUBCASE("only multi-word tags is degenerate") {
    const std::vector<TagRecord> tags{{"seg-a", "chat noir", "r1"}};
    CHECK_THROWS_AS(reuse_rate(tags, corpus), NumericError);
  }
  SUBCASE("unknown segments are data errors") {
    const std::vector<TagRecord> tags{{"nowhere", "chat", "r1"}};
    CHECK_THROWS_AS(reuse_rate(tags, corpus), DataError);
  }
  SUBCASE("out-of-vocabulary tags count as not reused") {
    const std::vector<TagRecord> tags{{"seg-a", "licorne", "r1"},
                                      {"seg-a", "chat", "r1"}};
    CHECK(reuse_rate(tags, corpus) == doctest::Approx(0.5));
  }
}

TEST_CASE("keyword split partitions the gold pairs") {
  // chat occurs in seg-a and seg-b; noir occurs in seg-a and seg-c.
  const EncodedCorpus corpus = make_corpus(
      {"chat", "noir"},
      {{"seg-a", {0, 1}}, {"seg-b", {0}}, {"seg-c", {1}}, {"seg-d", {}}});
  const GoldStandard gold = gold_from({{{"seg-a", "chat"}, true},
                                       {{"seg-b", "chat"}, false},
                                       {{"seg-c", "chat"}, true},
                                       {{"seg-d", "chat"}, false},
                                       {{"seg-a", "noir"}, true},
                                       {{"seg-b", "noir"}, true}});
  const PairSet predicted{{"seg-a", "chat"},
                          {"seg-b", "chat"},
                          {"seg-b", "noir"},
                          {"seg-c", "chat"}};

  const KeywordSplit split = split_by_keyword(predicted, gold, corpus);
  CHECK(split.pairs_with + split.pairs_without ==
        static_cast<long long>(gold.labels.size()));
  CHECK(split.pairs_with == 3);   // (a,chat), (b,chat), (a,noir)
  CHECK(split.pairs_without == 3);

  SUBCASE("per-partition scores equal recomputation on the subsets") {
    GoldStandard with_kw;
    GoldStandard without_kw;
    for (const auto& [pair, present] : gold.labels) {
      const int pos = *corpus.segment_pos(pair.first);
      const int id = *keyword_lookup(corpus, pair.second);
      if (keyword_occurs(corpus, id, pos)) {
        with_kw.labels.emplace(pair, present);
      } else {
        without_kw.labels.emplace(pair, present);
      }
    }
    const PrfResult expect_with = prf(predicted, with_kw);
    const PrfResult expect_without = prf(predicted, without_kw);
    CHECK(split.with_keyword.f1 == doctest::Approx(expect_with.f1));
    CHECK(split.with_keyword.precision ==
          doctest::Approx(expect_with.precision));
    CHECK(split.without_keyword.f1 == doctest::Approx(expect_without.f1));
    CHECK(split.without_keyword.recall ==
          doctest::Approx(expect_without.recall));
  }

  SUBCASE("count partition property") {
    const PrfResult whole = prf(predicted, gold);
    CHECK(split.with_keyword.counts.tp + split.without_keyword.counts.tp ==
          whole.counts.tp);
    CHECK(split.with_keyword.counts.fp + split.without_keyword.counts.fp ==
          whole.counts.fp);
    CHECK(split.with_keyword.counts.fn + split.without_keyword.counts.fn ==
          whole.counts.fn);
  }

  SUBCASE("the keyword baseline can never score on the absent side") {
    // Predicting with the keyword baseline itself: every predicted pair
    // lies in the keyword-present partition by construction.
    PairSet keyword_predictions;
    for (const auto& [pair, present] : gold.labels) {
      const int pos = *corpus.segment_pos(pair.first);
      const int id = *keyword_lookup(corpus, pair.second);
      if (keyword_occurs(corpus, id, pos)) {
        keyword_predictions.emplace(pair);
      }
    }
    const KeywordSplit ks =
        split_by_keyword(keyword_predictions, gold, corpus);
    CHECK(ks.without_keyword.f1 == 0.0);
    CHECK(ks.without_keyword.counts.tp == 0);
  }
}

TEST_SUITE_END();

}  // namespace
}  // namespace condet
