// Copyright 2026 The dpmatch Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DPMATCH_BENCH_EXPERIMENTS_HPP_
#define DPMATCH_BENCH_EXPERIMENTS_HPP_

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "dpmatch/bench/config.hpp"
#include "dpmatch/bench/metrics.hpp"
#include "dpmatch/community.hpp"
#include "dpmatch/error.hpp"
#include "dpmatch/graph.hpp"
#include "dpmatch/matchers.hpp"
#include "dpmatch/netgen.hpp"
#include "dpmatch/random.hpp"

namespace dpmatch::bench {

struct RunRecord {
  std::string setting;
  std::string method;
  std::size_t d = 0;  // 0 when the method has no candidate-count parameter
  std::size_t rep = 0;
  std::uint64_t seed = 0;
  char graph = 'A';  // which graph plays the left role
  std::size_t n_a = 0, n_b = 0, overlap = 0;
  std::optional<double> recovery_all, recovery_matched, recovery_converged, containment;
  std::optional<std::size_t> matched, converged;
  double wall_ms = 0.0;  // not part of the deterministic CSV
};

struct Report {
  std::vector<std::string> echo;  // resolved config, one key=value per line
  std::vector<RunRecord> records;
};

/// Dense symmetric matrix file: first line "n <count>", then n rows of n
/// whitespace-separated reals.
inline Matrix<double> read_dense_matrix(std::istream& in) {
  std::string tag;
  long long n = -1;
  if (!(in >> tag >> n) || tag != "n" || n < 0) throw InputError("matrix file: expected header 'n <count>'");
  Matrix<double> m(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!(in >> m(i, j)))
        throw InputError("matrix file: expected " + std::to_string(n * n) + " entries");
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != m(j, i)) throw InputError("matrix file: matrix is not symmetric");
  return m;
}

inline std::vector<Vertex> read_truth(std::istream& in, std::size_t n_a, std::size_t n_b, unsigned base) {
  std::vector<Vertex> truth(n_a, kNoVertex);
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    long long i = -1, j = -1;
    if (!(ls >> i >> j)) throw InputError("truth file: expected two integers per line");
    i -= base;
    j -= base;
    if (i < 0 || j < 0 || static_cast<std::size_t>(i) >= n_a || static_cast<std::size_t>(j) >= n_b)
      throw InputError("truth file: index out of range");
    truth[static_cast<std::size_t>(i)] = static_cast<Vertex>(j);
  }
  return truth;
}

inline std::vector<std::string> echo_config(const ExperimentConfig& c) {
  std::vector<std::string> out;
  auto num = [](double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return std::string(buf);
  };
  out.push_back("scenario=" + scenario_name(c.scenario));
  out.push_back("seed=" + std::to_string(c.seed));
  out.push_back("repetitions=" + std::to_string(c.repetitions));
  for (const auto& m : c.resolved_methods()) out.push_back("method=" + m);
  for (auto d : c.d) out.push_back("d=" + std::to_string(d));
  out.push_back("n_rep=" + std::to_string(c.n_rep));
  out.push_back("tau=" + (c.tau ? num(*c.tau) : std::string("n_rep/10")));
  switch (c.scenario) {
    case Scenario::kEr:
    case Scenario::kSbm:
      out.push_back("n=" + std::to_string(c.n));
      for (double q : c.q) out.push_back("q=" + num(q));
      for (double r : c.rho) out.push_back("rho=" + num(r));
      if (c.scenario == Scenario::kEr)
        for (double s : c.s) out.push_back("s=" + num(s));
      else
        out.push_back("K=" + std::to_string(c.k));
      break;
    case Scenario::kThresholdPipeline:
      out.push_back("matrix=" + c.matrix_path);
      out.push_back(std::string("threshold_mode=") + (c.same_threshold ? "same" : "diff"));
      out.push_back("threshold_step=" + num(c.threshold_step));
      for (double t : c.t1) out.push_back("t1=" + num(t));
      for (auto m : c.m) out.push_back("m=" + std::to_string(m));
      for (double s : c.s) out.push_back("s=" + num(s));
      break;
    case Scenario::kFilePair:
      out.push_back("graph_a=" + c.graph_a);
      out.push_back("graph_b=" + c.graph_b);
      out.push_back("truth=" + c.truth_path);
      out.push_back("index_base=" + std::to_string(c.index_base));
      break;
  }
  return out;
}

namespace detail {

inline std::string fmt_g(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

inline bool uses_d(const std::string& method) {
  return method == "ee" || method == "ee-pre" || method == "ee-post" || method == "comm-ee-post" ||
         method == "comm-refine-ee-post";
}

inline bool is_community_method(const std::string& method) { return method.rfind("comm-", 0) == 0; }

// One matching problem: two graphs, the truth map, and lazily computed
// community partitions.
struct Instance {
  Graph a, b;
  std::vector<Vertex> truth;
  std::size_t k = 2;
  std::optional<std::optional<std::pair<CommunityPartition, CommunityPartition>>> parts;

  const std::optional<std::pair<CommunityPartition, CommunityPartition>>& partitions() {
    if (!parts) {
      try {
        parts = std::make_optional(std::make_pair(score(a, k), score(b, k)));
      } catch (const std::exception&) {
        parts = std::optional<std::pair<CommunityPartition, CommunityPartition>>{};
      }
    }
    return *parts;
  }
};

inline void fill_from_match(RunRecord& rec, const MatchResult& r, std::span<const Vertex> truth, bool iterative) {
  rec.recovery_all = recovery_rate(r, truth, RateMode::kAll);
  rec.recovery_matched = recovery_rate(r, truth, RateMode::kMatched);
  rec.matched = r.matched_count();
  if (iterative) {
    rec.recovery_converged = recovery_rate(r, truth, RateMode::kConverged);
    rec.converged = r.converged_count();
  }
}

inline void run_method(RunRecord& rec, Instance& inst, const ExperimentConfig& cfg) {
  const auto& m = rec.method;
  const MatcherParams params{rec.d, cfg.n_rep, cfg.tau};
  const auto start = std::chrono::steady_clock::now();
  if (m == "dp") {
    fill_from_match(rec, dp_match(inst.a, inst.b), inst.truth, false);
  } else if (m == "ee" || m == "ee-pre") {
    const auto c = m == "ee" ? ee_match(inst.a, inst.b, rec.d) : ee_pre(inst.a, inst.b, rec.d);
    rec.containment = recovery_rate(c, inst.truth);
    rec.recovery_all = rec.containment;
    std::size_t rows = 0;
    for (const auto& row : c.rows) rows += !row.empty();
    rec.matched = rows;
  } else if (m == "ee-post") {
    fill_from_match(rec, ee_post(inst.a, inst.b, rec.d, cfg.n_rep, cfg.tau), inst.truth, true);
  } else if (is_community_method(m)) {
    const auto& parts = inst.partitions();
    const Matcher matcher = (m == "comm-dp" || m == "comm-refine-dp") ? Matcher::kDp : Matcher::kEePost;
    if (parts) {
      if (m == "comm-dp" || m == "comm-ee-post") {
        const auto all = community_match_all(inst.a, inst.b, parts->first, parts->second, matcher, params);
        fill_from_match(rec, best_permutation(all).result, inst.truth, matcher == Matcher::kEePost);
      } else {
        const auto out = community_match_refined(inst.a, inst.b, parts->first, parts->second, matcher, params);
        fill_from_match(rec, out.global_result, inst.truth, true);
      }
    }
  } else {
    throw InputError("unknown method " + m);
  }
  rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

struct Task {
  std::string setting;
  std::size_t setting_index = 0;
  std::size_t rep = 0;
  std::function<std::vector<Instance>(std::uint64_t seed)> build;  // one instance per reported graph
};

inline std::vector<RunRecord> run_task(const Task& t, const ExperimentConfig& cfg) {
  const std::uint64_t seed =
      derive_seed(cfg.seed, {static_cast<std::uint64_t>(cfg.scenario), t.setting_index, t.rep});
  auto instances = t.build(seed);
  std::vector<RunRecord> out;
  for (std::size_t g = 0; g < instances.size(); ++g) {
    auto& inst = instances[g];
    inst.k = cfg.k;
    for (const auto& method : cfg.resolved_methods()) {
      const std::vector<std::size_t> ds = uses_d(method) ? cfg.d : std::vector<std::size_t>{0};
      for (auto d : ds) {
        RunRecord rec;
        rec.setting = t.setting;
        rec.method = method;
        rec.d = d;
        rec.rep = t.rep;
        rec.seed = seed;
        rec.graph = static_cast<char>('A' + g);
        rec.n_a = inst.a.num_vertices();
        rec.n_b = inst.b.num_vertices();
        rec.overlap = static_cast<std::size_t>(
            std::count_if(inst.truth.begin(), inst.truth.end(), [](Vertex v) { return v != kNoVertex; }));
        run_method(rec, inst, cfg);
        out.push_back(std::move(rec));
      }
    }
  }
  return out;
}

// Runs tasks on up to `jobs` threads; results come back in task order.
inline std::vector<RunRecord> run_tasks(const std::vector<Task>& tasks, const ExperimentConfig& cfg,
                                        std::size_t jobs) {
  std::vector<std::vector<RunRecord>> results(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        results[i] = run_task(tasks[i], cfg);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  jobs = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(1, tasks.size()));
  std::vector<std::thread> pool;
  for (std::size_t j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<RunRecord> out;
  for (auto& r : results)
    for (auto& rec : r) out.push_back(std::move(rec));
  return out;
}

// Both orientations of a pair, so each graph gets its own series.
inline std::vector<Instance> both_orientations(ChildPair pair) {
  std::vector<Instance> out(2);
  out[1].a = pair.b.graph;
  out[1].b = pair.a.graph;
  out[1].truth = invert_truth(pair.truth, pair.b.graph.num_vertices());
  out[0].a = std::move(pair.a.graph);
  out[0].b = std::move(pair.b.graph);
  out[0].truth = std::move(pair.truth);
  return out;
}

}  // namespace detail

/// Partially-overlapping correlated ER grid: q x zip(rho, s). Every method is
/// run with each graph in the left role and reported per graph.
inline Report run_er_grid(const ExperimentConfig& cfg, std::size_t jobs = 1) {
  std::vector<detail::Task> tasks;
  const std::size_t pairs = std::max(cfg.rho.size(), cfg.s.size());
  std::size_t index = 0;
  for (double q : cfg.q) {
    for (std::size_t p = 0; p < pairs; ++p) {
      const double rho = cfg.rho[cfg.rho.size() == 1 ? 0 : p];
      const double s = cfg.s[cfg.s.size() == 1 ? 0 : p];
      const std::string label = "q=" + detail::fmt_g(q) + " rho=" + detail::fmt_g(rho) + " s=" + detail::fmt_g(s);
      for (std::size_t r = 0; r < cfg.repetitions; ++r) {
        tasks.push_back({label, index, r, [n = cfg.n, q, rho, s](std::uint64_t seed) {
                           const Graph parent = sample_bernoulli(ErSpec{n, q}, derive_seed(seed, {1}));
                           return detail::both_orientations(make_pair(parent, s, rho, derive_seed(seed, {2})));
                         }});
      }
      ++index;
    }
  }
  return {echo_config(cfg), detail::run_tasks(tasks, cfg, jobs)};
}

/// Correlated SBM grid: q x rho with s forced to 1, K planted blocks with
/// probability q inside and q/2 across. One series per run.
inline Report run_sbm_grid(ExperimentConfig cfg, std::size_t jobs = 1) {
  cfg.s = {1.0};
  std::vector<detail::Task> tasks;
  std::size_t index = 0;
  for (double q : cfg.q) {
    for (double rho : cfg.rho) {
      const std::string label = "q=" + detail::fmt_g(q) + " rho=" + detail::fmt_g(rho);
      for (std::size_t r = 0; r < cfg.repetitions; ++r) {
        tasks.push_back({label, index, r, [n = cfg.n, k = cfg.k, q, rho](std::uint64_t seed) {
                           const Graph parent = sample_bernoulli(planted_partition(n, k, q), derive_seed(seed, {1}));
                           auto pair = make_pair(parent, 1.0, rho, derive_seed(seed, {2}));
                           std::vector<detail::Instance> out(1);
                           out[0].a = std::move(pair.a.graph);
                           out[0].b = std::move(pair.b.graph);
                           out[0].truth = std::move(pair.truth);
                           return out;
                         }});
      }
      ++index;
    }
  }
  return {echo_config(cfg), detail::run_tasks(tasks, cfg, jobs)};
}

/// Thresholded-matrix pipeline. For each (t1, m, s): threshold the matrix at
/// t1 for A and at t1 (same) or t1 + step (diff) for B, take the leading m x m
/// block, keep each vertex with probability s, drop isolated vertices, and
/// relabel B at random.
inline Report run_threshold_pipeline(const ExperimentConfig& cfg, const Matrix<double>& r, std::size_t jobs = 1) {
  if (r.rows() != r.cols()) throw InputError("threshold pipeline: matrix is not square");
  std::map<double, std::shared_ptr<const Graph>> thresholded;
  auto graph_at = [&](double t) {
    auto it = thresholded.find(t);
    if (it == thresholded.end())
      it = thresholded.emplace(t, std::make_shared<const Graph>(threshold_to_graph(r, t))).first;
    return it->second;
  };
  std::vector<detail::Task> tasks;
  std::size_t index = 0;
  for (double t1 : cfg.t1) {
    const double t2 = cfg.same_threshold ? t1 : t1 + cfg.threshold_step;
    auto ga = graph_at(t1);
    auto gb = graph_at(t2);
    for (std::size_t m : cfg.m) {
      if (m > r.rows()) throw InputError("threshold pipeline: m exceeds the matrix size");
      for (double s : cfg.s) {
        const std::string label = "t1=" + detail::fmt_g(t1) + " t2=" + detail::fmt_g(t2) +
                                  " m=" + std::to_string(m) + " s=" + detail::fmt_g(s);
        for (std::size_t rep = 0; rep < cfg.repetitions; ++rep) {
          tasks.push_back({label, index, rep, [ga, gb, m, s](std::uint64_t seed) {
                             const auto lead = VertexSet::all(m);
                             const Graph a2 = induced_subgraph(*ga, lead);
                             const Graph b2 = induced_subgraph(*gb, lead);
                             const auto ca = sample_child(a2, s, 1.0, derive_seed(seed, {1}));
                             const auto cb = sample_child(b2, s, 1.0, derive_seed(seed, {2}));
                             auto [a, keep_a] = prune_isolated(ca.graph);
                             auto [b0, keep_b] = prune_isolated(cb.graph);
                             Permutation pi = identity_permutation(b0.num_vertices());
                             Rng rng(derive_seed(seed, {3}));
                             rng.shuffle(std::span<Vertex>(pi));
                             std::vector<Vertex> b_of_origin(m, kNoVertex);
                             for (std::size_t j = 0; j < keep_b.size(); ++j)
                               b_of_origin[cb.parent_of[keep_b[j]]] = pi[j];
                             std::vector<detail::Instance> out(1);
                             out[0].truth.assign(a.num_vertices(), kNoVertex);
                             for (std::size_t i = 0; i < keep_a.size(); ++i)
                               out[0].truth[i] = b_of_origin[ca.parent_of[keep_a[i]]];
                             out[0].a = std::move(a);
                             out[0].b = permute(b0, pi);
                             return out;
                           }});
        }
        ++index;
      }
    }
  }
  return {echo_config(cfg), detail::run_tasks(tasks, cfg, jobs)};
}

/// Two graphs from edge-list files with an optional truth file.
inline Report run_file_pair(const ExperimentConfig& cfg, std::size_t jobs = 1) {
  auto open = [](const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    return in;
  };
  auto in_a = open(cfg.graph_a);
  auto in_b = open(cfg.graph_b);
  auto a = std::make_shared<const Graph>(read_edge_list(in_a, cfg.index_base));
  auto b = std::make_shared<const Graph>(read_edge_list(in_b, cfg.index_base));
  auto truth = std::make_shared<std::vector<Vertex>>(a->num_vertices(), kNoVertex);
  if (!cfg.truth_path.empty()) {
    auto in_t = open(cfg.truth_path);
    *truth = read_truth(in_t, a->num_vertices(), b->num_vertices(), cfg.index_base);
  }
  std::vector<detail::Task> tasks;
  for (std::size_t rep = 0; rep < cfg.repetitions; ++rep)
    tasks.push_back({"files", 0, rep, [a, b, truth](std::uint64_t) {
                       std::vector<detail::Instance> out(1);
                       out[0].a = *a;
                       out[0].b = *b;
                       out[0].truth = *truth;
                       return out;
                     }});
  return {echo_config(cfg), detail::run_tasks(tasks, cfg, jobs)};
}

inline Report run_experiment(const ExperimentConfig& cfg, std::size_t jobs = 1) {
  switch (cfg.scenario) {
    case Scenario::kEr: return run_er_grid(cfg, jobs);
    case Scenario::kSbm: return run_sbm_grid(cfg, jobs);
    case Scenario::kThresholdPipeline: {
      std::ifstream in(cfg.matrix_path);
      if (!in) throw InputError("cannot open " + cfg.matrix_path);
      return run_threshold_pipeline(cfg, read_dense_matrix(in), jobs);
    }
    case Scenario::kFilePair: return run_file_pair(cfg, jobs);
  }
  throw InputError("unknown scenario");
}

inline const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols = {
      "setting", "method",   "d",         "rep",          "seed",           "graph",
      "n_a",     "n_b",      "overlap",   "recovery_all", "recovery_matched", "recovery_converged",
      "containment", "matched", "converged"};
  return cols;
}

/// Deterministic CSV: '#' config echo, a header row, then one row per record.
inline void write_csv(std::ostream& out, const Report& report) {
  for (const auto& line : report.echo) out << "# " << line << '\n';
  const auto& cols = csv_columns();
  for (std::size_t c = 0; c < cols.size(); ++c) out << (c ? "," : "") << cols[c];
  out << '\n';
  auto rate = [](const std::optional<double>& x) {
    if (!x) return std::string("NA");
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", *x);
    return std::string(buf);
  };
  auto count = [](const std::optional<std::size_t>& x) { return x ? std::to_string(*x) : std::string("NA"); };
  for (const auto& r : report.records) {
    out << '"' << r.setting << "\"," << r.method << ',' << r.d << ',' << r.rep << ',' << r.seed << ',' << r.graph
        << ',' << r.n_a << ',' << r.n_b << ',' << r.overlap << ',' << rate(r.recovery_all) << ','
        << rate(r.recovery_matched) << ',' << rate(r.recovery_converged) << ',' << rate(r.containment) << ','
        << count(r.matched) << ',' << count(r.converged) << '\n';
  }
}

/// Wall times, kept apart from the deterministic CSV.
inline void write_timing_csv(std::ostream& out, const Report& report) {
  out << "setting,method,d,rep,graph,wall_ms\n";
  for (const auto& r : report.records) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", r.wall_ms);
    out << '"' << r.setting << "\"," << r.method << ',' << r.d << ',' << r.rep << ',' << r.graph << ',' << buf
        << '\n';
  }
}

}  // namespace dpmatch::bench

#endif  // DPMATCH_BENCH_EXPERIMENTS_HPP_
