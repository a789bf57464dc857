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

#include "condet/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "condet/corpus.hpp"
#include "condet/detect.hpp"
#include "condet/error.hpp"
#include "condet/eval.hpp"
#include "condet/gibbs.hpp"
#include "condet/math.hpp"
#include "condet/model.hpp"
#include "condet/online_vb.hpp"
#include "condet/report.hpp"
#include "condet/synthetic.hpp"
#include "condet/version.hpp"

namespace condet::cli {

namespace {

std::string hex64(std::uint64_t x) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(x));
  return buf;
}

// Hash of the full argument vector; identical invocations stamp identical
// provenance into their outputs.
std::string config_hash(const std::vector<std::string>& args) {
  std::string joined;
  for (const std::string& a : args) {
    joined += a;
    joined += '\x1f';
  }
  return hex64(fnv1a64(joined));
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw DataError("cannot write file: " + path.string());
  }
  out << content;
}

GoldAggregation parse_aggregation(const std::string& name) {
  if (name == "majority") return GoldAggregation::kMajorityTiePresent;
  if (name == "any") return GoldAggregation::kAnyPresent;
  if (name == "all") return GoldAggregation::kAllPresent;
  throw UsageError("unknown aggregation rule \"" + name +
                   "\" (expected majority, any or all)");
}

EngineMode mode_for_model(const TopicModel& model) {
  return model.engine == "gibbs" ? EngineMode::kGibbs : EngineMode::kOnline;
}

// ---------------------------------------------------------------------------
// ingest

struct IngestArgs {
  std::string input;
  std::string output;
  std::string stopwords;
  int min_df = 1;
};

int cmd_ingest(const IngestArgs& a, const Provenance& prov,
               std::ostream& out) {
  IngestOptions options;
  options.min_df = a.min_df;
  if (!a.stopwords.empty()) {
    options.stopwords = load_stopwords(a.stopwords);
  }
  IngestStats stats;
  const EncodedCorpus corpus = ingest_file(a.input, options, &stats);
  save_corpus(corpus, a.output, &prov);
  out << "segments " << stats.segments << " (" << stats.empty_segments
      << " empty)\n";
  out << "vocabulary " << stats.vocabulary_size << "\n";
  out << "tokens kept " << stats.tokens_kept << " of " << stats.tokens_seen
      << " (stopworded " << stats.tokens_stopword << ", below min-df "
      << stats.tokens_below_min_df << ")\n";
  return 0;
}

// ---------------------------------------------------------------------------
// train

struct TrainArgs {
  std::string engine;
  std::string corpus;
  std::string output;
  std::string state_out;
  int k = 150;
  double alpha = -1.0;  // negative means "use 50/K"
  double beta = 0.1;
  std::uint64_t seed = 0;
  int burn_in = 150;
  int average_samples = 0;
  int passes = 1;
  int batch_size = 256;
  double tau0 = 1.0;
  double kappa = 0.7;
  double tol = 1e-4;
  int max_iter = 100;
};

int cmd_train(const TrainArgs& a, const Provenance& prov, std::ostream& out) {
  const EncodedCorpus corpus = load_corpus(a.corpus);
  Hyperparameters hyper;
  hyper.K = a.k;
  hyper.alpha = a.alpha < 0.0 ? (a.k > 0 ? 50.0 / a.k : 0.0) : a.alpha;
  hyper.beta = a.beta;
  hyper.validate();

  if (a.engine == "gibbs") {
    const GibbsRun run =
        gibbs_run(corpus, hyper, a.burn_in, a.seed, a.average_samples);
    save_model(run.model, a.output, &prov);
    if (!a.state_out.empty()) {
      save_gibbs_state(run.state, a.state_out, &prov);
    }
    out << "trained gibbs model: K=" << hyper.K << " V=" << corpus.vocab_size()
        << " M=" << corpus.num_segments() << " sweeps=" << run.state.iteration
        << " seed=" << a.seed << "\n";
    return 0;
  }
  if (a.engine == "online") {
    VBOptions options;
    options.batch_size = a.batch_size;
    options.tau0 = a.tau0;
    options.kappa = a.kappa;
    options.passes = a.passes;
    options.tol = a.tol;
    options.max_iter = a.max_iter;
    const VBRun run = vb_train(corpus, hyper, options, a.seed);
    save_model(run.model, a.output, &prov);
    if (!a.state_out.empty()) {
      save_vb_state(run.state, a.state_out, &prov);
    }
    out << "trained online model: K=" << hyper.K
        << " V=" << corpus.vocab_size() << " M=" << corpus.num_segments()
        << " updates=" << run.state.updates_seen << " seed=" << a.seed
        << "\n";
    return 0;
  }
  throw UsageError("unknown engine \"" + a.engine +
                   "\" (expected gibbs or online)");
}

// ---------------------------------------------------------------------------
// query

struct QueryArgs {
  std::string corpus;
  std::string model;
  std::string state;
  std::string word;
  std::string method;
  int top_n = 30;
  double theta_threshold = 0.01;
  std::string output;
};

int cmd_query(const QueryArgs& a, const Provenance& prov, std::ostream& out) {
  const EncodedCorpus corpus = load_corpus(a.corpus);
  const TopicModel model = load_model(a.model);
  std::optional<GibbsState> state;
  if (!a.state.empty()) {
    state = load_gibbs_state(a.state, corpus);
  }
  const GibbsState* state_ptr = state ? &*state : nullptr;

  DetectionMethod method;
  method.engine = mode_for_model(model);
  method.top_n = a.top_n;
  method.theta_threshold = a.theta_threshold;

  std::set<std::string> hits;
  std::string label;
  if (a.method == "keyword") {
    hits = keyword_baseline(corpus, a.word);
    label = "keyword";
  } else if (a.method == "hybrid") {
    method.heuristic = Heuristic::kTopN;
    hits = hybrid_detect(corpus, model, state_ptr, a.word, method);
    label = "hybrid(" + method.name() + ")";
  } else {
    if (a.method == "most_likely") {
      method.heuristic = Heuristic::kMostLikely;
    } else if (a.method == "highest_rank") {
      method.heuristic = Heuristic::kHighestRank;
    } else if (a.method == "top_n") {
      method.heuristic = Heuristic::kTopN;
    } else if (a.method == "concrete") {
      method.heuristic = Heuristic::kConcreteAssignment;
    } else {
      throw UsageError("unknown method \"" + a.method +
                       "\" (expected keyword, most_likely, highest_rank, "
                       "top_n, concrete or hybrid)");
    }
    hits = detect(corpus, model, state_ptr, a.word, method);
    label = method.name();
  }

  std::vector<DetectionRecord> records;
  records.reserve(hits.size());
  const std::string folded = fold_case(a.word);
  for (const std::string& id : hits) {
    records.push_back({folded, id, label});
  }
  save_detections(records, a.output, &prov);
  out << "method " << label << ": " << hits.size() << " of "
      << corpus.num_segments() << " segments detected\n";
  return 0;
}

// ---------------------------------------------------------------------------
// eval

struct EvalArgs {
  std::string corpus;
  std::string gold;
  std::string aggregation = "majority";
  std::string online_model;
  std::string gibbs_model;
  std::string gibbs_state;
  std::vector<std::string> methods;
  int top_n = 30;
  double theta_threshold = 0.01;
  bool split_by_keyword = false;
  bool macro = false;
  std::string output;
};

struct MethodSpec {
  enum class Kind { kKeyword, kHybrid, kTopic };
  Kind kind = Kind::kTopic;
  DetectionMethod method;
  std::string label;
};

Heuristic parse_heuristic(const std::string& token, int default_top_n,
                          int* top_n_out) {
  if (token == "most_likely") return Heuristic::kMostLikely;
  if (token == "highest_rank") return Heuristic::kHighestRank;
  if (token == "concrete_assignment") return Heuristic::kConcreteAssignment;
  if (token.rfind("top_", 0) == 0) {
    const std::string rest = token.substr(4);
    if (rest == "n") {
      *top_n_out = default_top_n;
    } else {
      try {
        std::size_t used = 0;
        const int n = std::stoi(rest, &used);
        if (used != rest.size() || n < 1) throw std::invalid_argument(rest);
        *top_n_out = n;
      } catch (const std::exception&) {
        throw UsageError("bad top-n method token \"" + token + "\"");
      }
    }
    return Heuristic::kTopN;
  }
  throw UsageError("unknown heuristic \"" + token + "\"");
}

MethodSpec parse_method_token(const std::string& token, const EvalArgs& a) {
  MethodSpec spec;
  if (token == "keyword") {
    spec.kind = MethodSpec::Kind::kKeyword;
    spec.label = "keyword";
    return spec;
  }
  if (token == "hybrid") {
    spec.kind = MethodSpec::Kind::kHybrid;
    spec.method.engine = EngineMode::kOnline;
    spec.method.heuristic = Heuristic::kTopN;
    spec.method.top_n = a.top_n;
    spec.method.theta_threshold = a.theta_threshold;
    spec.label = "hybrid(" + spec.method.name() + ")";
    return spec;
  }
  const std::size_t slash = token.find('/');
  if (slash == std::string::npos) {
    throw UsageError("unknown method token \"" + token + "\"");
  }
  const std::string engine = token.substr(0, slash);
  if (engine == "online") {
    spec.method.engine = EngineMode::kOnline;
  } else if (engine == "gibbs") {
    spec.method.engine = EngineMode::kGibbs;
  } else {
    throw UsageError("unknown engine in method token \"" + token + "\"");
  }
  int top_n = a.top_n;
  spec.method.heuristic =
      parse_heuristic(token.substr(slash + 1), a.top_n, &top_n);
  spec.method.top_n = top_n;
  spec.method.theta_threshold = a.theta_threshold;
  spec.label = spec.method.name();
  return spec;
}

int cmd_eval(const EvalArgs& a, const Provenance& prov, std::ostream& out) {
  const EncodedCorpus corpus = load_corpus(a.corpus);
  const GoldStandard gold_all =
      build_gold(load_rating_csv(a.gold), parse_aggregation(a.aggregation));

  std::optional<TopicModel> online_model;
  std::optional<TopicModel> gibbs_model;
  std::optional<GibbsState> gibbs_state;
  if (!a.online_model.empty()) {
    online_model = load_model(a.online_model);
    if (online_model->engine == "gibbs") {
      throw UsageError("--online-model points at a sampler model");
    }
  }
  if (!a.gibbs_model.empty()) {
    gibbs_model = load_model(a.gibbs_model);
    if (gibbs_model->engine != "gibbs") {
      throw UsageError("--gibbs-model must carry the gibbs engine tag");
    }
    if (a.gibbs_state.empty()) {
      throw UsageError("--gibbs-model needs --gibbs-state for association");
    }
    gibbs_state = load_gibbs_state(a.gibbs_state, corpus);
  } else if (!a.gibbs_state.empty()) {
    throw UsageError("--gibbs-state given without --gibbs-model");
  }

  // Default method set: everything the provided models support.
  std::vector<std::string> tokens = a.methods;
  if (tokens.empty()) {
    tokens.push_back("keyword");
    if (online_model) {
      tokens.push_back("online/most_likely");
      tokens.push_back("online/highest_rank");
      tokens.push_back("online/top_n");
    }
    if (gibbs_model) {
      tokens.push_back("gibbs/most_likely");
      tokens.push_back("gibbs/highest_rank");
      tokens.push_back("gibbs/top_n");
      tokens.push_back("gibbs/concrete_assignment");
    }
    if (online_model) {
      tokens.push_back("hybrid");
    }
  }
  std::vector<MethodSpec> specs;
  for (const std::string& token : tokens) {
    specs.push_back(parse_method_token(token, a));
  }
  for (const MethodSpec& spec : specs) {
    const bool needs_online = (spec.kind == MethodSpec::Kind::kHybrid) ||
                              (spec.kind == MethodSpec::Kind::kTopic &&
                               spec.method.engine == EngineMode::kOnline);
    const bool needs_gibbs = spec.kind == MethodSpec::Kind::kTopic &&
                             spec.method.engine == EngineMode::kGibbs;
    if (needs_online && !online_model) {
      throw UsageError("method " + spec.label + " needs --online-model");
    }
    if (needs_gibbs && !gibbs_model) {
      throw UsageError("method " + spec.label + " needs --gibbs-model");
    }
  }

  // The query set: single-word concepts from the gold standard that the
  // corpus lexicon knows.
  std::set<std::string> concepts_in_gold;
  for (const auto& [pair, label] : gold_all.labels) {
    concepts_in_gold.insert(pair.second);
  }
  std::set<std::string> query_set;
  for (const std::string& concept_name : concepts_in_gold) {
    bool multi = false;
    for (char c : concept_name) {
      if (std::isspace(static_cast<unsigned char>(c))) {
        multi = true;
        break;
      }
    }
    if (!multi && keyword_lookup(corpus, concept_name)) {
      query_set.insert(concept_name);
    }
  }
  if (query_set.empty()) {
    throw DataError(
        "no gold-standard concept is a single word in the corpus lexicon");
  }

  GoldStandard gold;
  for (const auto& [pair, label] : gold_all.labels) {
    if (query_set.count(pair.second)) gold.labels.emplace(pair, label);
  }

  // Predictions per method over every queried concept.
  std::vector<ReportRow> micro_rows;
  std::vector<ReportRow> macro_rows;
  std::vector<std::pair<std::string, KeywordSplit>> splits;
  for (const MethodSpec& spec : specs) {
    PairSet predicted;
    for (const std::string& concept_name : query_set) {
      std::set<std::string> hits;
      switch (spec.kind) {
        case MethodSpec::Kind::kKeyword:
          hits = keyword_baseline(corpus, concept_name);
          break;
        case MethodSpec::Kind::kHybrid:
          hits = hybrid_detect(corpus, *online_model, nullptr, concept_name,
                               spec.method);
          break;
        case MethodSpec::Kind::kTopic: {
          const bool online = spec.method.engine == EngineMode::kOnline;
          const TopicModel& model = online ? *online_model : *gibbs_model;
          const GibbsState* state = online ? nullptr : &*gibbs_state;
          hits = detect(corpus, model, state, concept_name, spec.method);
          break;
        }
      }
      for (const std::string& id : hits) predicted.emplace(id, concept_name);
    }
    micro_rows.push_back({spec.label, prf(predicted, gold)});
    if (a.macro) {
      macro_rows.push_back({spec.label, prf_macro(predicted, gold)});
    }
    if (a.split_by_keyword) {
      splits.emplace_back(spec.label,
                          split_by_keyword(predicted, gold, corpus));
    }
  }

  // Assemble the report.
  const std::string head = provenance_comment(prov);
  std::ostringstream title;
  title << "detection scores, micro-averaged over " << gold.labels.size()
        << " gold pairs (" << query_set.size() << " concepts)";
  std::string text = head + format_report_text(title.str(), micro_rows);
  std::string csv = head + format_report_csv(micro_rows);
  if (a.macro) {
    std::ostringstream mtitle;
    mtitle << "detection scores, macro-averaged over " << query_set.size()
           << " concepts";
    text += "\n" + format_report_text(mtitle.str(), macro_rows);
    csv += "\n# macro\n" + format_report_csv(macro_rows);
  }
  write_text_file(a.output + ".txt", text);
  write_text_file(a.output + ".csv", csv);

  if (a.split_by_keyword) {
    std::vector<ReportRow> with_rows;
    std::vector<ReportRow> without_rows;
    std::string split_csv = head +
        "method,partition,recall,precision,f1,tp,fp,fn\n";
    for (const auto& [label, split] : splits) {
      with_rows.push_back({label, split.with_keyword});
      without_rows.push_back({label, split.without_keyword});
      for (int side = 0; side < 2; ++side) {
        const PrfResult& r =
            side == 0 ? split.with_keyword : split.without_keyword;
        split_csv += label;
        split_csv += side == 0 ? ",keyword_present" : ",keyword_absent";
        split_csv += "," + format_score(r.recall);
        split_csv += "," + format_score(r.precision);
        split_csv += "," + format_score(r.f1);
        split_csv += "," + std::to_string(r.counts.tp);
        split_csv += "," + std::to_string(r.counts.fp);
        split_csv += "," + std::to_string(r.counts.fn);
        split_csv += "\n";
      }
    }
    const long long pairs_with =
        splits.empty() ? 0 : splits.front().second.pairs_with;
    const long long pairs_without =
        splits.empty() ? 0 : splits.front().second.pairs_without;
    std::ostringstream wt;
    wt << "keyword-present partition (" << pairs_with << " pairs)";
    std::ostringstream wo;
    wo << "keyword-absent partition (" << pairs_without << " pairs)";
    const std::string split_text = head +
                                   format_report_text(wt.str(), with_rows) +
                                   "\n" +
                                   format_report_text(wo.str(), without_rows);
    write_text_file(a.output + ".split.txt", split_text);
    write_text_file(a.output + ".split.csv", split_csv);
  }

  out << text;
  return 0;
}

// ---------------------------------------------------------------------------
// agree

struct AgreeArgs {
  std::string file1;
  std::string file2;
  std::string aggregation = "majority";
  long long n_perm = 10000;
  std::uint64_t seed = 0;
  std::string output;
};

int cmd_agree(const AgreeArgs& a, const Provenance& prov, std::ostream& out) {
  const GoldAggregation agg = parse_aggregation(a.aggregation);
  const GoldStandard g1 = build_gold(load_rating_csv(a.file1), agg);
  const GoldStandard g2 = build_gold(load_rating_csv(a.file2), agg);
  const ContingencyTable table = join_gold(g1, g2);
  const double ac1 = gwet_ac1(table);
  const double kappa = cohen_kappa(table);
  const double p = ac1_pvalue(table, a.n_perm, a.seed);

  std::ostringstream text;
  text << "joined pairs n=" << table.n() << "\n";
  text << "table a=" << table.a << " b=" << table.b << " c=" << table.c
       << " d=" << table.d << "\n";
  text << "ac1 " << format_score(ac1) << "\n";
  text << "kappa " << format_score(kappa) << "\n";
  text << "permutation p-value " << format_score(p) << " (n_perm=" << a.n_perm
       << ", one-sided)\n";
  out << text.str();
  if (!a.output.empty()) {
    write_text_file(a.output, provenance_comment(prov) + text.str());
  }
  return 0;
}

// ---------------------------------------------------------------------------
// synth

struct SynthArgs {
  int k = 0;
  int v = 0;
  int m = 0;
  int len = 0;
  double alpha = -1.0;
  double beta = 0.1;
  std::uint64_t seed = 0;
  std::string output_corpus;
  std::string output_truth;
};

int cmd_synth(const SynthArgs& a, const Provenance& prov, std::ostream& out) {
  Hyperparameters hyper;
  hyper.K = a.k;
  hyper.alpha = a.alpha < 0.0 ? (a.k > 0 ? 50.0 / a.k : 0.0) : a.alpha;
  hyper.beta = a.beta;
  hyper.validate();
  if (a.m < 1 || a.len < 1) {
    throw UsageError("synth needs --m >= 1 segments and --len >= 1 tokens");
  }
  const std::vector<int> lengths(static_cast<std::size_t>(a.m), a.len);
  const SyntheticCorpus synth = generate_corpus(hyper, a.v, lengths, a.seed);
  save_corpus(synth.corpus, a.output_corpus, &prov);
  save_model(synth.truth, a.output_truth, &prov);
  out << "generated M=" << a.m << " segments, " << synth.corpus.total_tokens()
      << " tokens, V=" << a.v << ", K=" << a.k << ", seed=" << a.seed << "\n";
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"topic-model concept detection toolkit"};
  app.name(kToolName);

  IngestArgs ingest_args;
  CLI::App* ingest = app.add_subcommand(
      "ingest", "encode a segment file into a corpus");
  ingest->add_option("--input", ingest_args.input, "segment file (JSON lines)")
      ->required();
  ingest->add_option("--output", ingest_args.output, "encoded corpus path")
      ->required();
  ingest->add_option("--stopwords", ingest_args.stopwords,
                     "stopword list, one word per line");
  ingest->add_option("--min-df", ingest_args.min_df,
                     "document-frequency floor for terms");

  TrainArgs train_args;
  CLI::App* train = app.add_subcommand("train", "fit a topic model");
  train->add_option("--engine", train_args.engine, "gibbs or online")
      ->required();
  train->add_option("--corpus", train_args.corpus, "encoded corpus path")
      ->required();
  train->add_option("--output", train_args.output, "model output path")
      ->required();
  train->add_option("--state-out", train_args.state_out,
                    "also write the engine state");
  train->add_option("--k", train_args.k, "topic count");
  CLI::Option* train_alpha =
      train->add_option("--alpha", train_args.alpha, "mixture prior");
  train->add_option("--beta", train_args.beta, "word prior");
  train->add_option("--seed", train_args.seed, "random seed");
  train->add_option("--burn-in", train_args.burn_in,
                    "sampler burn-in sweeps");
  train->add_option("--average-samples", train_args.average_samples,
                    "average this many post-burn-in sweeps");
  train->add_option("--passes", train_args.passes, "online passes");
  train->add_option("--batch-size", train_args.batch_size,
                    "online minibatch size");
  train->add_option("--tau0", train_args.tau0, "learning-rate delay");
  train->add_option("--kappa", train_args.kappa, "learning-rate decay");
  train->add_option("--tol", train_args.tol, "e-step gamma tolerance");
  train->add_option("--max-iter", train_args.max_iter,
                    "e-step iteration cap");

  QueryArgs query_args;
  CLI::App* query = app.add_subcommand(
      "query", "find segments expressing a concept");
  query->add_option("--corpus", query_args.corpus, "encoded corpus path")
      ->required();
  query->add_option("--model", query_args.model, "model path")->required();
  query->add_option("--state", query_args.state, "sampler state path");
  query->add_option("--word", query_args.word, "concept keyword")->required();
  query
      ->add_option("--method", query_args.method,
                   "keyword, most_likely, highest_rank, top_n, concrete or "
                   "hybrid")
      ->required();
  query->add_option("--top-n", query_args.top_n, "rank cutoff for top_n");
  query->add_option("--theta-threshold", query_args.theta_threshold,
                    "mixture weight needed to call a topic present");
  query->add_option("--output", query_args.output, "detections output path")
      ->required();

  EvalArgs eval_args;
  CLI::App* eval = app.add_subcommand(
      "eval", "score detection methods against a gold standard");
  eval->add_option("--corpus", eval_args.corpus, "encoded corpus path")
      ->required();
  eval->add_option("--gold", eval_args.gold, "rating CSV")->required();
  eval->add_option("--agg", eval_args.aggregation,
                   "rater aggregation: majority, any or all");
  eval->add_option("--online-model", eval_args.online_model,
                   "online model path");
  eval->add_option("--gibbs-model", eval_args.gibbs_model,
                   "sampler model path");
  eval->add_option("--gibbs-state", eval_args.gibbs_state,
                   "sampler state path");
  eval->add_option("--methods", eval_args.methods,
                   "method tokens, e.g. keyword online/top_n "
                   "gibbs/concrete_assignment hybrid");
  eval->add_option("--top-n", eval_args.top_n, "rank cutoff for top_n");
  eval->add_option("--theta-threshold", eval_args.theta_threshold,
                   "mixture weight needed to call a topic present");
  eval->add_flag("--split-by-keyword", eval_args.split_by_keyword,
                 "also score keyword-present and keyword-absent pairs apart");
  eval->add_flag("--macro", eval_args.macro,
                 "also report macro-averaged scores");
  eval->add_option("--output", eval_args.output,
                   "report path prefix (.txt/.csv appended)")
      ->required();

  AgreeArgs agree_args;
  CLI::App* agree = app.add_subcommand(
      "agree", "inter-annotator agreement between two rating files");
  agree->add_option("--file1", agree_args.file1, "rating CSV")->required();
  agree->add_option("--file2", agree_args.file2, "rating CSV")->required();
  agree->add_option("--agg", agree_args.aggregation,
                    "rater aggregation: majority, any or all");
  agree->add_option("--n-perm", agree_args.n_perm, "permutation count");
  agree->add_option("--seed", agree_args.seed, "permutation seed");
  agree->add_option("--output", agree_args.output, "also write report here");

  SynthArgs synth_args;
  CLI::App* synth = app.add_subcommand(
      "synth", "draw a corpus from the generative story");
  synth->add_option("--k", synth_args.k, "topic count")->required();
  synth->add_option("--v", synth_args.v, "vocabulary size")->required();
  synth->add_option("--m", synth_args.m, "segment count")->required();
  synth->add_option("--len", synth_args.len, "tokens per segment")
      ->required();
  CLI::Option* synth_alpha =
      synth->add_option("--alpha", synth_args.alpha, "mixture prior");
  synth->add_option("--beta", synth_args.beta, "word prior");
  synth->add_option("--seed", synth_args.seed, "random seed");
  synth->add_option("--output-corpus", synth_args.output_corpus,
                    "corpus output path")
      ->required();
  synth->add_option("--output-truth", synth_args.output_truth,
                    "ground-truth model output path")
      ->required();

  app.require_subcommand(1);

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back(kToolName);
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 1;
  }

  Provenance prov;
  prov.config_hash = config_hash(args);

  try {
    if (*ingest) {
      return cmd_ingest(ingest_args, prov, out);
    }
    if (*train) {
      if (train_alpha->count() == 0) train_args.alpha = -1.0;
      prov.seed = train_args.seed;
      return cmd_train(train_args, prov, out);
    }
    if (*query) {
      return cmd_query(query_args, prov, out);
    }
    if (*eval) {
      return cmd_eval(eval_args, prov, out);
    }
    if (*agree) {
      prov.seed = agree_args.seed;
      return cmd_agree(agree_args, prov, out);
    }
    if (*synth) {
      if (synth_alpha->count() == 0) synth_args.alpha = -1.0;
      prov.seed = synth_args.seed;
      return cmd_synth(synth_args, prov, out);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << "\n";
    return 2;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
  err << "usage error: no subcommand given\n";
  return 1;
}

}  // namespace condet::cli
