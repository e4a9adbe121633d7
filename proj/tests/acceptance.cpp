// Copyright 2026 The dpmatch Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance suite: one PASS/FAIL line per criterion. The optional first
// argument is the path of the dpmatch_bench executable (criterion 9).

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "dpmatch/dpmatch.hpp"
#include "oracles.hpp"

using namespace dpmatch;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double recovery_all(const MatchResult& r, const std::vector<Vertex>& truth) {
  std::size_t hit = 0, den = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (truth[i] == kNoVertex) continue;
    ++den;
    hit += r.assignment[i] == truth[i];
  }
  return den ? static_cast<double>(hit) / static_cast<double>(den) : 0.0;
}

double containment(const CandidateMatrix& c, const std::vector<Vertex>& truth) {
  std::size_t hit = 0, den = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (truth[i] == kNoVertex) continue;
    ++den;
    hit += c.contains(static_cast<Vertex>(i), truth[i]);
  }
  return den ? static_cast<double>(hit) / static_cast<double>(den) : 0.0;
}

ChildPair er_pair(std::size_t n, double q, double rho, double s, std::uint64_t criterion, std::uint64_t rep) {
  const Graph parent = sample_bernoulli(ErSpec{n, q}, derive_seed(criterion, {rep, 1}));
  return make_pair(parent, s, rho, derive_seed(criterion, {rep, 2}));
}

ChildPair sbm_pair(std::size_t n, double q, double rho, std::uint64_t criterion, std::uint64_t rep) {
  const Graph parent = sample_bernoulli(planted_partition(n, 2, q), derive_seed(criterion, {rep, 1}));
  return make_pair(parent, 1.0, rho, derive_seed(criterion, {rep, 2}));
}

// 1. W1 against a piecewise CDF-integration oracle.
Outcome criterion1() {
  Rng rng(101);
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    std::vector<std::uint32_t> a(1 + rng.below(40)), b(1 + rng.below(40));
    for (auto& x : a) x = static_cast<std::uint32_t>(rng.below(51));
    for (auto& x : b) x = static_cast<std::uint32_t>(rng.below(51));
    const double want = oracle::w1_cdf_integration(a, b);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    worst = std::max(worst, std::abs(w1_distance(DegreeProfile{a}, DegreeProfile{b}) - want));
  }
  return {worst <= 1e-9, fmt("1000 pairs, max |error| = %.3g", worst)};
}

// 2. Linear assignment and bipartite matching against exhaustive search.
Outcome criterion2() {
  Rng rng(202);
  int lap_bad = 0, match_bad = 0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = t < 100 ? 6 : 7;
    Matrix<std::int64_t> m(n, n);
    for (auto& x : m.data()) x = static_cast<std::int64_t>(rng.below(201)) - 100;
    lap_bad += linear_assignment_max(m).value != oracle::best_assignment_value(m);
  }
  for (int t = 0; t < 200; ++t) {
    const std::size_t nl = 1 + rng.below(8), nr = 1 + rng.below(8);
    BipartiteCandidates c(nl, nr);
    std::vector<std::vector<Vertex>> adj(nl);
    const double density = 0.1 + 0.5 * rng.uniform();
    for (Vertex l = 0; l < nl; ++l)
      for (Vertex r = 0; r < nr; ++r)
        if (rng.bernoulli(density)) {
          c.add(l, r);
          adj[l].push_back(r);
        }
    match_bad += max_bipartite_matching(c).cardinality() != oracle::max_matching_size(adj, nr);
  }
  return {lap_bad == 0 && match_bad == 0,
          fmt("assignment mismatches %d/200, matching mismatches %d/200", lap_bad, match_bad)};
}

// 3. Isomorphic recovery.
Outcome criterion3() {
  double ee = 0, dp = 0;
  for (std::uint64_t rep = 0; rep < 20; ++rep) {
    const auto p = er_pair(300, 0.10, 1.0, 1.0, 3, rep);
    ee += recovery_all(ee_post(p.a.graph, p.b.graph, 10, 50), p.truth);
    dp += recovery_all(dp_match(p.a.graph, p.b.graph), p.truth);
  }
  ee /= 20;
  dp /= 20;
  return {ee >= 0.95 && dp >= 0.80, fmt("mean recovery EE-post %.4f (>= 0.95), DP %.4f (>= 0.80)", ee, dp)};
}

// 4. Partial-overlap ordering and converged recovery.
Outcome criterion4() {
  double ee = 0, dp = 0, worst_conv = 1.0;
  int successful = 0;
  for (std::uint64_t rep = 0; rep < 20; ++rep) {
    const auto p = er_pair(300, 0.10, 0.95, 0.98, 4, rep);
    const auto r = ee_post(p.a.graph, p.b.graph, 10, 50);
    ee += recovery_all(r, p.truth);
    dp += recovery_all(dp_match(p.a.graph, p.b.graph), p.truth);
    if (2 * r.converged_count() > p.a.graph.num_vertices()) {
      ++successful;
      std::size_t hit = 0;
      for (std::size_t i = 0; i < r.flags.size(); ++i)
        hit += r.flags[i] && p.truth[i] != kNoVertex && r.assignment[i] == p.truth[i];
      worst_conv = std::min(worst_conv, static_cast<double>(hit) / static_cast<double>(r.converged_count()));
    }
  }
  ee /= 20;
  dp /= 20;
  return {ee > dp && worst_conv >= 0.80,
          fmt("mean recovery EE-post %.4f > DP %.4f; %d successful runs, min converged recovery %.4f (>= 0.80)", ee,
              dp, successful, successful ? worst_conv : 0.0)};
}

// 5. Candidate containment grows with d and is monotone on every run.
Outcome criterion5() {
  double c1 = 0, c30 = 0;
  bool monotone = true;
  for (std::uint64_t rep = 0; rep < 20; ++rep) {
    const auto p = er_pair(300, 0.10, 1.0, 0.9, 5, rep);
    const auto w = distance_matrix(p.a.graph, p.b.graph);
    double prev = -1.0;
    for (std::size_t d = 1; d <= 30; ++d) {
      const double c = containment(ee_match(w, d), p.truth);
      monotone &= c >= prev;
      prev = c;
      if (d == 1) c1 += c;
      if (d == 30) c30 += c;
    }
  }
  c1 /= 20;
  c30 /= 20;
  return {monotone && c30 - c1 >= 0.15,
          fmt("containment d=1 %.4f, d=30 %.4f, gain %.4f (>= 0.15), monotone on every run: %s", c1, c30, c30 - c1,
              monotone ? "yes" : "no")};
}

// 6. SCORE misclustering on a two-block SBM.
Outcome criterion6() {
  double total = 0;
  for (std::uint64_t rep = 0; rep < 10; ++rep) {
    const Graph g = sample_bernoulli(planted_partition(1000, 2, 0.10), derive_seed(6, {rep}));
    const auto part = score(g, 2);
    std::size_t agree = 0;
    for (std::size_t i = 0; i < 1000; ++i) agree += part.labels[i] == (i < 500 ? 0u : 1u);
    total += static_cast<double>(std::min(agree, 1000 - agree)) / 1000.0;
  }
  const double mean = total / 10;
  return {mean <= 0.05, fmt("mean misclustering %.4f (<= 0.05)", mean)};
}

// 7. Dense favours communities then global EE-post; sparse favours direct.
Outcome criterion7() {
  const MatcherParams params{10, 50, std::nullopt};
  auto compare = [&](double q, double rho, std::uint64_t tag) {
    double direct = 0, comm = 0;
    for (std::uint64_t rep = 0; rep < 10; ++rep) {
      const auto p = sbm_pair(1000, q, rho, tag, rep);
      direct += recovery_all(ee_post(p.a.graph, p.b.graph, 10, 50), p.truth);
      try {
        const auto pa = score(p.a.graph, 2);
        const auto pb = score(p.b.graph, 2);
        comm += recovery_all(
            community_match_refined(p.a.graph, p.b.graph, pa, pb, Matcher::kEePost, params).global_result, p.truth);
      } catch (const NumericalError&) {
        // A failed community step counts as zero recovery.
      }
    }
    return std::make_pair(direct / 10, comm / 10);
  };
  const auto [dense_ii, dense_vi] = compare(0.10, 0.93, 71);
  const auto [sparse_ii, sparse_vi] = compare(0.05, 0.90, 72);
  const bool ok = dense_vi >= dense_ii - 0.02 && sparse_ii >= sparse_vi - 0.02;
  return {ok, fmt("q=0.10 rho=0.93: (vi) %.4f vs (ii) %.4f; q=0.05 rho=0.90: (ii) %.4f vs (vi) %.4f", dense_vi,
                  dense_ii, sparse_ii, sparse_vi)};
}

// 8. The exhaustive oracle dominates every heuristic.
Outcome criterion8() {
  Rng rng(808);
  int violations = 0, automorphism_checks = 0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + rng.below(5);
    const Graph parent = sample_bernoulli(ErSpec{n, 0.3 + 0.4 * rng.uniform()}, rng.next_u64());
    Graph a, b;
    if (t % 3 == 0) {
      a = b = parent;
    } else {
      auto p = make_pair(parent, 0.85, 0.85, rng.next_u64());
      a = std::move(p.a.graph);
      b = std::move(p.b.graph);
    }
    const auto best = exhaustive_match(a, b, 6).best_value;
    std::vector<Assignment> outputs = {dp_match(a, b).assignment, ee_post(a, b, 2, 10).assignment};
    if (!ee_pre(a, b, 1).rows.empty()) {
      // EE-pre with d = 1 is one-to-one only when its rows do not collide.
      Assignment pre(a.num_vertices());
      const auto c = ee_pre(a, b, 1);
      for (std::size_t i = 0; i < c.n_a(); ++i)
        if (!c.rows[i].empty()) pre.to_right[i] = c.rows[i][0];
      if (pre.is_injective()) outputs.push_back(pre);
    }
    for (const auto& out : outputs) {
      const auto v = edge_agreement(a, b, out);
      violations += v > best;
      if (t % 3 == 0 && is_isomorphism(a, b, out)) {
        ++automorphism_checks;
        violations += v != best;
      }
    }
  }
  return {violations == 0, fmt("100 pairs, %d violations, %d automorphism equalities checked", violations,
                               automorphism_checks)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// 9. Byte-identical CSV on rerun, for every scenario.
Outcome criterion9(const std::string& cli) {
  if (cli.empty()) return {false, "no bench executable given"};
  const fs::path root = fs::temp_directory_path() / "dpmatch_acceptance";
  fs::remove_all(root);
  fs::create_directories(root);

  {
    Rng rng(9);
    std::ofstream m(root / "matrix.txt");
    m << "n 120\n";
    Matrix<double> r(120, 120, 1.0);
    for (std::size_t i = 0; i < 120; ++i)
      for (std::size_t j = i + 1; j < 120; ++j) r(i, j) = r(j, i) = static_cast<double>(rng.below(1000)) / 1000.0;
    for (std::size_t i = 0; i < 120; ++i) {
      for (std::size_t j = 0; j < 120; ++j) m << r(i, j) << (j + 1 < 120 ? " " : "\n");
    }
    const auto pair = make_pair(sample_bernoulli(ErSpec{60, 0.15}, 1), 0.9, 0.95, 2);
    std::ofstream a(root / "a.txt"), b(root / "b.txt"), t(root / "truth.txt");
    write_edge_list(a, pair.a.graph);
    write_edge_list(b, pair.b.graph);
    for (std::size_t i = 0; i < pair.truth.size(); ++i)
      if (pair.truth[i] != kNoVertex) t << i << ' ' << pair.truth[i] << '\n';
  }
  const std::vector<std::pair<std::string, std::string>> configs = {
      {"er", "n=100\nq=0.1\nrepetitions=2\nd=5\nn_rep=10\n"},
      {"sbm", "n=200\nq=0.1\nrho=0.95\nrepetitions=2\nd=5\nn_rep=10\n"},
      {"threshold-pipeline", "matrix=" + (root / "matrix.txt").string() + "\nt1=0.5\nm=100\nrepetitions=2\n"},
      {"file-pair", "graph_a=" + (root / "a.txt").string() + "\ngraph_b=" + (root / "b.txt").string() +
                        "\ntruth=" + (root / "truth.txt").string() + "\n"},
  };
  std::string detail;
  bool ok = true;
  for (const auto& [scenario, text] : configs) {
    const fs::path cfg = root / (scenario + ".cfg");
    std::ofstream(cfg) << text;
    std::vector<std::string> csvs;
    for (const auto& [run, jobs] : std::vector<std::pair<std::string, int>>{{"r1", 1}, {"r2", 1}, {"r3", 2}}) {
      const std::string cmd = "\"" + cli + "\" --config \"" + cfg.string() + "\" --scenario " + scenario +
                              " --seed 17 --jobs " + std::to_string(jobs) + " --out \"" + (root / run).string() +
                              "\" > /dev/null";
      if (std::system(cmd.c_str()) != 0) {
        ok = false;
        detail += scenario + ": run failed; ";
        break;
      }
      csvs.push_back(slurp(root / run / (scenario + ".csv")));
    }
    const bool same = csvs.size() == 3 && !csvs[0].empty() && csvs[0] == csvs[1] && csvs[0] == csvs[2];
    ok &= same;
    detail += scenario + (same ? " identical; " : " DIFFERS; ");
  }
  return {ok, detail};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  const std::vector<std::function<Outcome()>> criteria = {
      criterion1, criterion2, criterion3, criterion4, criterion5,
      criterion6, criterion7, criterion8, [&] { return criterion9(cli); }};
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !o.pass;
    std::printf("%s criterion %zu: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", k + 1, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
