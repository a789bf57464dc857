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

#include "condet/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <unordered_set>

#include <json.hpp>

#include "condet/error.hpp"
#include "condet/version.hpp"

namespace condet {

namespace {

constexpr double kRowSumTolerance = 1e-9;

void check_stochastic_rows(const MatD& m, const char* name) {
  for (int r = 0; r < m.rows(); ++r) {
    double sum = 0.0;
    for (double x : m.row(r)) {
      if (!(x >= 0.0) || !std::isfinite(x)) {
        throw DataError(std::string(name) + " row " + std::to_string(r) +
                        " has a negative or non-finite entry");
      }
      sum += x;
    }
    if (std::abs(sum - 1.0) > kRowSumTolerance) {
      throw DataError(std::string(name) + " row " + std::to_string(r) +
                      " sums to " + std::to_string(sum) + ", expected 1");
    }
  }
}

bool known_engine(const std::string& e) {
  return e == "gibbs" || e == "online" || e == "synthetic";
}

}  // namespace

Hyperparameters Hyperparameters::with_defaults(int K) {
  Hyperparameters h;
  h.K = K;
  h.alpha = K > 0 ? 50.0 / K : 0.0;
  h.beta = 0.1;
  return h;
}

void Hyperparameters::validate() const {
  if (K < 1) {
    throw UsageError("topic count K must be at least 1, got " +
                     std::to_string(K));
  }
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw UsageError("alpha must be positive and finite");
  }
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw UsageError("beta must be positive and finite");
  }
}

void TopicModel::validate() const {
  hyper.validate();
  if (!known_engine(engine)) {
    throw DataError("unknown engine tag \"" + engine + "\"");
  }
  if (phi.rows() != hyper.K) {
    throw DataError("phi has " + std::to_string(phi.rows()) +
                    " rows, expected K = " + std::to_string(hyper.K));
  }
  if (theta.cols() != hyper.K) {
    throw DataError("theta has " + std::to_string(theta.cols()) +
                    " columns, expected K = " + std::to_string(hyper.K));
  }
  if (static_cast<int>(segment_ids.size()) != theta.rows()) {
    throw DataError("segment_ids size does not match theta row count");
  }
  if (static_cast<int>(vocabulary.size()) != phi.cols()) {
    throw DataError("vocabulary size does not match phi column count");
  }
  std::unordered_set<std::string> seen;
  for (const std::string& id : segment_ids) {
    if (!seen.insert(id).second) {
      throw DataError("duplicate segment id \"" + id + "\" in model");
    }
  }
  check_stochastic_rows(phi, "phi");
  check_stochastic_rows(theta, "theta");
}

std::vector<TopWord> top_words(const TopicModel& model, int topic, int n) {
  if (topic < 0 || topic >= model.K()) {
    throw UsageError("topic index out of range: " + std::to_string(topic));
  }
  if (n < 1) {
    throw UsageError("top_words needs n >= 1, got " + std::to_string(n));
  }
  const int v = model.V();
  std::vector<int> order(static_cast<std::size_t>(v));
  std::iota(order.begin(), order.end(), 0);
  std::span<const double> row = model.phi.row(topic);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (row[static_cast<std::size_t>(a)] != row[static_cast<std::size_t>(b)]) {
      return row[static_cast<std::size_t>(a)] >
             row[static_cast<std::size_t>(b)];
    }
    return a < b;  // ties go to the smaller token id
  });
  const int take = std::min(n, v);
  std::vector<TopWord> out;
  out.reserve(static_cast<std::size_t>(take));
  for (int i = 0; i < take; ++i) {
    TopWord w;
    w.token_id = order[static_cast<std::size_t>(i)];
    w.term = model.vocabulary[static_cast<std::size_t>(w.token_id)];
    w.probability = row[static_cast<std::size_t>(w.token_id)];
    w.rank = i + 1;
    out.push_back(std::move(w));
  }
  return out;
}

std::string model_to_json(const TopicModel& model,
                          const Provenance* provenance) {
  model.validate();
  nlohmann::ordered_json j;
  j["version"] = 1;
  if (provenance) {
    j["provenance"] = {{"tool", kToolName},
                       {"tool_version", kToolVersion},
                       {"config_hash", provenance->config_hash},
                       {"seed", provenance->seed}};
  }
  j["engine"] = model.engine;
  j["K"] = model.K();
  j["V"] = model.V();
  j["M"] = model.M();
  j["alpha"] = model.hyper.alpha;
  j["beta"] = model.hyper.beta;
  nlohmann::ordered_json phi = nlohmann::ordered_json::array();
  for (int k = 0; k < model.K(); ++k) {
    phi.push_back(std::vector<double>(model.phi.row(k).begin(),
                                      model.phi.row(k).end()));
  }
  j["phi"] = std::move(phi);
  nlohmann::ordered_json theta = nlohmann::ordered_json::array();
  for (int d = 0; d < model.M(); ++d) {
    theta.push_back(std::vector<double>(model.theta.row(d).begin(),
                                        model.theta.row(d).end()));
  }
  j["theta"] = std::move(theta);
  j["segment_ids"] = model.segment_ids;
  j["vocabulary"] = model.vocabulary;
  return j.dump() + "\n";
}

void save_model(const TopicModel& model, const std::filesystem::path& path,
                const Provenance* provenance) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw DataError("cannot write file: " + path.string());
  }
  out << model_to_json(model, provenance);
}

TopicModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw DataError("cannot open file: " + path.string());
  }
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DataError("model file " + path.string() + ": " + e.what());
  }
  try {
    if (!j.is_object() || j.value("version", 0) != 1) {
      throw DataError("model file " + path.string() +
                      ": missing or unsupported version");
    }
    TopicModel m;
    m.engine = j.at("engine").get<std::string>();
    m.hyper.K = j.at("K").get<int>();
    m.hyper.alpha = j.at("alpha").get<double>();
    m.hyper.beta = j.at("beta").get<double>();
    const int v = j.at("V").get<int>();
    const int d = j.at("M").get<int>();
    const auto& phi = j.at("phi");
    const auto& theta = j.at("theta");
    if (static_cast<int>(phi.size()) != m.hyper.K ||
        static_cast<int>(theta.size()) != d) {
      throw DataError("model file " + path.string() +
                      ": matrix shape disagrees with K or M");
    }
    m.phi = MatD(m.hyper.K, v);
    for (int k = 0; k < m.hyper.K; ++k) {
      const auto row = phi.at(k).get<std::vector<double>>();
      if (static_cast<int>(row.size()) != v) {
        throw DataError("model file " + path.string() +
                        ": phi row width disagrees with V");
      }
      std::copy(row.begin(), row.end(), m.phi.row(k).begin());
    }
    m.theta = MatD(d, m.hyper.K);
    for (int i = 0; i < d; ++i) {
      const auto row = theta.at(i).get<std::vector<double>>();
      if (static_cast<int>(row.size()) != m.hyper.K) {
        throw DataError("model file " + path.string() +
                        ": theta row width disagrees with K");
      }
      std::copy(row.begin(), row.end(), m.theta.row(i).begin());
    }
    m.segment_ids = j.at("segment_ids").get<std::vector<std::string>>();
    m.vocabulary = j.at("vocabulary").get<std::vector<std::string>>();
    m.validate();
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw DataError("model file " + path.string() + ": " + e.what());
  }
}

}  // namespace condet
