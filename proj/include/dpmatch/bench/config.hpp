// Copyright 2026 The dpmatch Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DPMATCH_BENCH_CONFIG_HPP_
#define DPMATCH_BENCH_CONFIG_HPP_

#include <algorithm>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dpmatch/error.hpp"

namespace dpmatch::bench {

/// Flat key=value text. Repeated keys accumulate into a list; '#' starts a
/// comment line.
class KeyValues {
 public:
  static KeyValues parse(std::istream& in) {
    KeyValues kv;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos)
        throw InputError("config line " + std::to_string(lineno) + ": expected key=value");
      kv.add(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return kv;
  }

  static KeyValues parse_string(const std::string& text) {
    std::istringstream in(text);
    return parse(in);
  }

  void add(const std::string& key, const std::string& value) {
    if (key.empty()) throw InputError("config: empty key");
    values_[key].push_back(value);
  }

  /// Replaces every value of key.
  void set(const std::string& key, const std::string& value) { values_[key] = {value}; }

  bool has(const std::string& key) const { return values_.count(key) != 0; }

  const std::vector<std::string>& all(const std::string& key) const {
    static const std::vector<std::string> none;
    auto it = values_.find(key);
    return it == values_.end() ? none : it->second;
  }

  const std::map<std::string, std::vector<std::string>>& entries() const { return values_; }

 private:
  static std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  }

  std::map<std::string, std::vector<std::string>> values_;
};

enum class Scenario { kEr, kSbm, kThresholdPipeline, kFilePair };

inline Scenario parse_scenario(const std::string& s) {
  if (s == "er") return Scenario::kEr;
  if (s == "sbm") return Scenario::kSbm;
  if (s == "threshold-pipeline") return Scenario::kThresholdPipeline;
  if (s == "file-pair") return Scenario::kFilePair;
  throw InputError("unknown scenario '" + s + "' (er | sbm | threshold-pipeline | file-pair)");
}

inline std::string scenario_name(Scenario s) {
  switch (s) {
    case Scenario::kEr: return "er";
    case Scenario::kSbm: return "sbm";
    case Scenario::kThresholdPipeline: return "threshold-pipeline";
    case Scenario::kFilePair: return "file-pair";
  }
  return "?";
}

/// Resolved experiment parameters. Defaults reproduce the simulation grids
/// of the ER and SBM studies; every list can be overridden from a config.
struct ExperimentConfig {
  Scenario scenario = Scenario::kEr;
  std::size_t n = 300;
  std::vector<double> q = {0.10, 0.05};
  // ER: rho and s are zipped into settings. SBM: rho only (s is forced to 1).
  std::vector<double> rho = {0.9, 0.95, 1.0};
  std::vector<double> s = {0.95, 0.98, 1.0};
  std::size_t k = 2;
  std::vector<std::size_t> d = {10, 30};
  std::size_t n_rep = 50;
  std::optional<double> tau;
  std::size_t repetitions = 50;
  std::uint64_t seed = 1;
  std::vector<std::string> methods;  // empty: scenario default

  // Threshold pipeline.
  std::string matrix_path;
  std::vector<double> t1 = {0.5, 0.6, 0.7};
  bool same_threshold = false;
  std::vector<std::size_t> m = {100, 300, 1000};
  double threshold_step = 0.1;

  // File pair.
  std::string graph_a, graph_b, truth_path;
  unsigned index_base = 0;

  std::vector<std::string> resolved_methods() const {
    if (!methods.empty()) return methods;
    switch (scenario) {
      case Scenario::kEr: return {"dp", "ee", "ee-pre", "ee-post"};
      case Scenario::kSbm:
        return {"dp", "ee-post", "comm-dp", "comm-ee-post", "comm-refine-dp", "comm-refine-ee-post"};
      case Scenario::kThresholdPipeline:
      case Scenario::kFilePair: return {"dp", "ee", "ee-post"};
    }
    return {};
  }
};

namespace detail {

inline double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw InputError("config: " + key + "=" + v + " is not a number");
  }
}

inline std::uint64_t to_uint(const std::string& key, const std::string& v) {
  if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos)
    throw InputError("config: " + key + "=" + v + " is not a non-negative integer");
  try {
    return std::stoull(v);
  } catch (const std::exception&) {
    throw InputError("config: " + key + "=" + v + " is out of range");
  }
}

inline void check_probabilities(const std::string& key, const std::vector<double>& v) {
  for (double x : v)
    if (!(x >= 0.0 && x <= 1.0)) throw InputError("config: " + key + " values must lie in [0,1]");
}

}  // namespace detail

inline ExperimentConfig to_config(const KeyValues& kv) {
  ExperimentConfig c;
  if (kv.has("scenario")) c.scenario = parse_scenario(kv.all("scenario").back());
  if (c.scenario == Scenario::kSbm) {
    c.n = 1000;
    c.rho = {0.9, 0.93, 0.95};
    c.s = {1.0};
    c.d = {10, 50};
    c.repetitions = 10;
  }
  if (c.scenario == Scenario::kThresholdPipeline) {
    c.s = {0.95, 0.97};
    c.d = {10};
    c.repetitions = 10;
  }
  if (c.scenario == Scenario::kFilePair) {
    c.d = {5};
    c.tau = 5.0;
    c.repetitions = 1;
  }

  auto doubles = [&](const char* key, std::vector<double>& out) {
    if (!kv.has(key)) return;
    out.clear();
    for (const auto& v : kv.all(key)) out.push_back(detail::to_double(key, v));
  };
  auto sizes = [&](const char* key, std::vector<std::size_t>& out) {
    if (!kv.has(key)) return;
    out.clear();
    for (const auto& v : kv.all(key)) out.push_back(detail::to_uint(key, v));
  };
  auto size = [&](const char* key, std::size_t& out) {
    if (kv.has(key)) out = detail::to_uint(key, kv.all(key).back());
  };
  auto text = [&](const char* key, std::string& out) {
    if (kv.has(key)) out = kv.all(key).back();
  };

  size("n", c.n);
  doubles("q", c.q);
  doubles("rho", c.rho);
  doubles("s", c.s);
  size("K", c.k);
  sizes("d", c.d);
  size("n_rep", c.n_rep);
  if (kv.has("tau")) c.tau = detail::to_double("tau", kv.all("tau").back());
  size("repetitions", c.repetitions);
  if (kv.has("seed")) c.seed = detail::to_uint("seed", kv.all("seed").back());
  if (kv.has("method")) c.methods = kv.all("method");
  text("matrix", c.matrix_path);
  doubles("t1", c.t1);
  if (kv.has("threshold_mode")) {
    const auto& mode = kv.all("threshold_mode").back();
    if (mode != "same" && mode != "diff") throw InputError("config: threshold_mode must be same or diff");
    c.same_threshold = mode == "same";
  }
  sizes("m", c.m);
  if (kv.has("threshold_step")) c.threshold_step = detail::to_double("threshold_step", kv.all("threshold_step").back());
  text("graph_a", c.graph_a);
  text("graph_b", c.graph_b);
  text("truth", c.truth_path);
  if (kv.has("index_base")) c.index_base = static_cast<unsigned>(detail::to_uint("index_base", kv.all("index_base").back()));

  detail::check_probabilities("q", c.q);
  detail::check_probabilities("rho", c.rho);
  detail::check_probabilities("s", c.s);
  if (c.repetitions == 0) throw InputError("config: repetitions must be at least 1");
  if (c.n_rep == 0) throw InputError("config: n_rep must be at least 1");
  for (auto d : c.d)
    if (d == 0) throw InputError("config: d must be positive");
  if (c.k < 2 || c.k > 6) throw InputError("config: K must lie in [2, 6]");
  if (c.tau && *c.tau < 0) throw InputError("config: tau must be non-negative");
  if (c.scenario == Scenario::kEr && c.rho.size() != c.s.size() && c.rho.size() != 1 && c.s.size() != 1)
    throw InputError("config: rho and s lists must have equal length (or one value) for er");
  if (c.scenario == Scenario::kThresholdPipeline && c.matrix_path.empty())
    throw InputError("config: threshold-pipeline needs matrix=PATH");
  if (c.scenario == Scenario::kFilePair && (c.graph_a.empty() || c.graph_b.empty()))
    throw InputError("config: file-pair needs graph_a=PATH and graph_b=PATH");
  static const std::vector<std::string> known = {"dp", "ee", "ee-pre", "ee-post", "comm-dp", "comm-ee-post",
                                                 "comm-refine-dp", "comm-refine-ee-post"};
  for (const auto& m : c.methods)
    if (std::find(known.begin(), known.end(), m) == known.end()) throw InputError("config: unknown method " + m);
  return c;
}

}  // namespace dpmatch::bench

#endif  // DPMATCH_BENCH_CONFIG_HPP_
