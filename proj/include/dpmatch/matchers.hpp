// Copyright 2026 The dpmatch Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DPMATCH_MATCHERS_HPP_
#define DPMATCH_MATCHERS_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "dpmatch/assign.hpp"
#include "dpmatch/error.hpp"
#include "dpmatch/graph.hpp"
#include "dpmatch/matrix.hpp"
#include "dpmatch/profile.hpp"

namespace dpmatch {

/// One-to-many matching: for each a-vertex, a set of b-vertices sorted by
/// index.
struct CandidateMatrix {
  std::size_t n_b = 0;
  std::vector<std::vector<Vertex>> rows;

  std::size_t n_a() const noexcept { return rows.size(); }

  bool contains(Vertex i, Vertex j) const {
    return std::binary_search(rows[i].begin(), rows[i].end(), j);
  }

  static CandidateMatrix from_assignment(const Assignment& m, std::size_t n_b) {
    CandidateMatrix c;
    c.n_b = n_b;
    c.rows.resize(m.n_left());
    for (std::size_t i = 0; i < m.n_left(); ++i)
      if (m.assigned(i)) c.rows[i].push_back(m[i]);
    return c;
  }

  friend bool operator==(const CandidateMatrix&, const CandidateMatrix&) = default;
};

/// Output of the one-to-one matchers. flags[i] is the convergence indicator
/// and streak[i] the number of consecutive final iterations in which row i
/// kept its assignment; both are zero for unassigned rows and for matchers
/// that do not iterate.
struct MatchResult {
  Assignment assignment;
  std::vector<std::uint8_t> flags;
  std::vector<std::size_t> streak;

  std::size_t matched_count() const { return assignment.cardinality(); }
  std::size_t converged_count() const {
    return static_cast<std::size_t>(std::count(flags.begin(), flags.end(), std::uint8_t{1}));
  }
};

/// High-confidence (a-vertex, b-vertex) pairs, injective in both coordinates.
class SeedSet {
 public:
  SeedSet() = default;
  explicit SeedSet(std::vector<Edge> pairs) : pairs_(std::move(pairs)) {
    auto lefts = firsts();
    auto rights = seconds();
    std::sort(lefts.begin(), lefts.end());
    std::sort(rights.begin(), rights.end());
    if (std::adjacent_find(lefts.begin(), lefts.end()) != lefts.end() ||
        std::adjacent_find(rights.begin(), rights.end()) != rights.end())
      throw InputError("SeedSet: pairs are not injective");
  }

  std::size_t size() const noexcept { return pairs_.size(); }
  bool empty() const noexcept { return pairs_.empty(); }
  const std::vector<Edge>& pairs() const noexcept { return pairs_; }

  std::vector<Vertex> firsts() const {
    std::vector<Vertex> out;
    for (const auto& p : pairs_) out.push_back(p.first);
    return out;
  }
  std::vector<Vertex> seconds() const {
    std::vector<Vertex> out;
    for (const auto& p : pairs_) out.push_back(p.second);
    return out;
  }

  Assignment as_assignment(std::size_t n_a) const {
    Assignment m(n_a);
    for (const auto& [i, j] : pairs_) m.to_right[i] = j;
    return m;
  }

 private:
  std::vector<Edge> pairs_;
};

/// Nearest-rank (type 1) empirical quantile of an ascending-sorted sample.
template <typename T>
T nearest_rank_quantile(std::span<const T> sorted, double level) {
  if (sorted.empty()) throw InputError("quantile of an empty sample");
  const double n = static_cast<double>(sorted.size());
  auto rank = static_cast<std::size_t>(std::ceil(level * n - 1e-9));
  rank = std::clamp<std::size_t>(rank, 1, sorted.size());
  return sorted[rank - 1];
}

/// Row-wise top-d selection by ascending value (or descending when
/// `largest`), ties to the lower column index.
template <typename T>
CandidateMatrix select_top(const Matrix<T>& w, std::size_t d, bool largest) {
  CandidateMatrix out;
  out.n_b = w.cols();
  out.rows.resize(w.rows());
  d = std::min(d, w.cols());
  std::vector<Vertex> idx(w.cols());
  for (std::size_t i = 0; i < w.rows(); ++i) {
    const auto row = w.row(i);
    for (std::size_t j = 0; j < idx.size(); ++j) idx[j] = static_cast<Vertex>(j);
    auto before = [&](Vertex x, Vertex y) {
      if (row[x] != row[y]) return largest ? row[x] > row[y] : row[x] < row[y];
      return x < y;
    };
    std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(d), idx.end(), before);
    out.rows[i].assign(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(d));
    std::sort(out.rows[i].begin(), out.rows[i].end());
  }
  return out;
}

/// Degree-profile matching: each a-vertex proposes its nearest b-vertex
/// (lowest index on ties; no proposal when every distance is infinite), and
/// a maximum bipartite matching over the proposals is returned.
inline MatchResult dp_match(const DistanceMatrix& w) {
  BipartiteCandidates c(w.rows(), w.cols());
  for (std::size_t i = 0; i < w.rows(); ++i) {
    const auto row = w.row(i);
    if (row.empty()) continue;
    const auto best = std::min_element(row.begin(), row.end());
    if (*best == kInfiniteDistance) continue;
    c.add(static_cast<Vertex>(i), static_cast<Vertex>(best - row.begin()));
  }
  MatchResult r;
  r.assignment = max_bipartite_matching(c);
  r.flags.assign(w.rows(), 0);
  r.streak.assign(w.rows(), 0);
  return r;
}

inline MatchResult dp_match(const Graph& a, const Graph& b) {
  return dp_match(distance_matrix(a, b));
}

/// Edge-exploited matching: the d nearest b-vertices of every a-vertex.
/// d larger than n_B is truncated.
inline CandidateMatrix ee_match(const DistanceMatrix& w, std::size_t d) {
  if (d == 0) throw InputError("ee_match: d must be positive");
  return select_top(w, d, /*largest=*/false);
}

inline CandidateMatrix ee_match(const Graph& a, const Graph& b, std::size_t d) {
  return ee_match(distance_matrix(a, b), d);
}

/// S(i, j) = sum over a-vertices k and candidates l of k of A(i,k) B(j,l):
/// the number of neighbours of i whose candidates neighbour j.
inline Matrix<std::int64_t> similarity_common_neighbors(const Graph& a, const Graph& b,
                                                        const CandidateMatrix& pi) {
  if (pi.n_a() != a.num_vertices() || pi.n_b != b.num_vertices())
    throw InputError("similarity_common_neighbors: candidate matrix shape mismatch");
  Matrix<std::int64_t> s(a.num_vertices(), b.num_vertices(), 0);
  for (Vertex i = 0; i < a.num_vertices(); ++i) {
    auto row = s.row(i);
    for (Vertex k : a.neighbors(i))
      for (Vertex l : pi.rows[k])
        for (Vertex j : b.neighbors(l)) ++row[j];
  }
  return s;
}

inline Matrix<std::int64_t> similarity_common_neighbors(const Graph& a, const Graph& b,
                                                        const Assignment& pi) {
  return similarity_common_neighbors(a, b, CandidateMatrix::from_assignment(pi, b.num_vertices()));
}

inline constexpr std::array<double, 7> kDegreeLevels = {0.5, 0.55, 0.6, 0.65, 0.7, 0.75, 0.8};
inline constexpr std::array<double, 7> kDistanceLevels = {0.2, 0.25, 0.3, 0.35, 0.4, 0.45, 0.5};

struct SeedSearch {
  double tau1 = 0.0;  // degree threshold
  double tau2 = 0.0;  // distance threshold
  SeedSet seeds;
  bool fallback = true;  // every threshold pair gave an empty seed set
};

/// Grid search over degree and distance thresholds for the largest seed set.
///
/// Degree thresholds are quantiles of the pooled degrees of both graphs;
/// distance thresholds are quantiles of the per-row minima of w (finite
/// minima only). The raw relation {(i,k): a_i >= t1, b_k >= t1, w(i,k) <= t2}
/// (isolated vertices never qualify)
/// is made injective greedily by ascending distance, ties by (i, k). Among
/// equally large seed sets the first in grid order wins.
inline SeedSearch grid_search_thresholds(const Graph& a, const Graph& b, const DistanceMatrix& w) {
  SeedSearch best;
  if (a.num_vertices() == 0 || b.num_vertices() == 0) return best;

  std::vector<std::size_t> pooled = a.degrees();
  const auto db = b.degrees();
  const auto da = a.degrees();
  pooled.insert(pooled.end(), db.begin(), db.end());
  std::sort(pooled.begin(), pooled.end());

  std::vector<double> minima;
  for (std::size_t i = 0; i < w.rows(); ++i) {
    const auto row = w.row(i);
    const double m = *std::min_element(row.begin(), row.end());
    if (m != kInfiniteDistance) minima.push_back(m);
  }
  if (minima.empty()) return best;
  std::sort(minima.begin(), minima.end());

  std::vector<double> tau2s;
  for (double lv : kDistanceLevels)
    tau2s.push_back(nearest_rank_quantile<double>(minima, lv));
  const double tau2_max = *std::max_element(tau2s.begin(), tau2s.end());

  std::vector<char> used_a(w.rows()), used_b(w.cols());
  for (double lv1 : kDegreeLevels) {
    const auto tau1 = static_cast<double>(nearest_rank_quantile<std::size_t>(pooled, lv1));
    std::vector<std::tuple<double, Vertex, Vertex>> rel;
    for (Vertex i = 0; i < w.rows(); ++i) {
      if (da[i] == 0 || static_cast<double>(da[i]) < tau1) continue;
      const auto row = w.row(i);
      for (Vertex k = 0; k < w.cols(); ++k)
        if (db[k] > 0 && static_cast<double>(db[k]) >= tau1 && row[k] <= tau2_max) rel.emplace_back(row[k], i, k);
    }
    std::sort(rel.begin(), rel.end());
    for (double tau2 : tau2s) {
      std::fill(used_a.begin(), used_a.end(), 0);
      std::fill(used_b.begin(), used_b.end(), 0);
      std::vector<Edge> pairs;
      for (const auto& [dist, i, k] : rel) {
        if (dist > tau2) break;
        if (used_a[i] || used_b[k]) continue;
        used_a[i] = used_b[k] = 1;
        pairs.emplace_back(i, k);
      }
      if (pairs.size() > best.seeds.size()) {
        best.tau1 = tau1;
        best.tau2 = tau2;
        best.seeds = SeedSet(std::move(pairs));
        best.fallback = false;
      }
    }
  }
  return best;
}

/// Everything ee_pre computes on the way to its candidates.
struct PreprocessTrace {
  SeedSearch search;
  std::int64_t tau3 = 0;
  Assignment extended;  // seeds plus the matching grown from them
  CandidateMatrix candidates;
};

/// Seeded edge-exploited matching.
///
/// Seeds come from grid_search_thresholds. Non-seed pairs whose seed-based
/// common-neighbour count reaches tau3 (the (n-1)/n nearest-rank quantile of
/// those counts, n = min(n_A, n_B), at least 1) are joined by a maximum
/// bipartite matching; the union with the seeds defines a common-neighbour
/// similarity whose d largest entries per row are returned. Falls back to
/// ee_match when no seeds are found.
inline PreprocessTrace ee_pre_traced(const Graph& a, const Graph& b, std::size_t d) {
  if (d == 0) throw InputError("ee_pre: d must be positive");
  const auto w = distance_matrix(a, b);
  PreprocessTrace t;
  t.search = grid_search_thresholds(a, b, w);
  if (t.search.fallback) {
    t.candidates = ee_match(w, d);
    return t;
  }
  const std::size_t na = a.num_vertices();
  const std::size_t nb = b.num_vertices();
  const Assignment pi0 = t.search.seeds.as_assignment(na);
  std::vector<char> seed_b(nb, 0);
  for (Vertex k : t.search.seeds.seconds()) seed_b[k] = 1;

  Matrix<std::int64_t> counts(na, nb, 0);
  for (Vertex i = 0; i < na; ++i) {
    if (pi0.assigned(i)) continue;
    auto row = counts.row(i);
    for (Vertex l : a.neighbors(i)) {
      if (!pi0.assigned(l)) continue;
      for (Vertex k : b.neighbors(pi0[l]))
        if (!seed_b[k]) ++row[k];
    }
  }
  // Quantile through a histogram of the (small, integral) counts.
  std::vector<std::size_t> hist;
  std::size_t total = 0;
  for (Vertex i = 0; i < na; ++i) {
    if (pi0.assigned(i)) continue;
    for (Vertex k = 0; k < nb; ++k) {
      if (seed_b[k]) continue;
      const auto c = static_cast<std::size_t>(counts(i, k));
      if (c >= hist.size()) hist.resize(c + 1, 0);
      ++hist[c];
      ++total;
    }
  }
  t.tau3 = 1;
  if (total > 0) {
    const double n = static_cast<double>(std::min(na, nb));
    auto rank = static_cast<std::size_t>(std::ceil((n - 1.0) / n * static_cast<double>(total) - 1e-9));
    rank = std::clamp<std::size_t>(rank, 1, total);
    std::size_t acc = 0;
    for (std::size_t c = 0; c < hist.size(); ++c) {
      acc += hist[c];
      if (acc >= rank) {
        t.tau3 = std::max<std::int64_t>(1, static_cast<std::int64_t>(c));
        break;
      }
    }
  }
  BipartiteCandidates u(na, nb);
  for (Vertex i = 0; i < na; ++i) {
    if (pi0.assigned(i)) continue;
    for (Vertex k = 0; k < nb; ++k)
      if (!seed_b[k] && counts(i, k) >= t.tau3) u.add(i, k);
  }
  const Assignment pi1 = max_bipartite_matching(u);
  t.extended = pi0;
  for (std::size_t i = 0; i < na; ++i)
    if (pi1.assigned(i)) t.extended.to_right[i] = pi1[i];
  t.candidates = select_top(similarity_common_neighbors(a, b, t.extended), d, /*largest=*/true);
  return t;
}

inline CandidateMatrix ee_pre(const Graph& a, const Graph& b, std::size_t d) {
  return ee_pre_traced(a, b, d).candidates;
}

struct RefineOptions {
  std::size_t n_rep = 50;
  std::optional<double> tau;                  // defaults to n_rep / 10
  std::vector<Assignment>* trace = nullptr;  // receives the assignment of every iteration
};

/// Iterated linear-assignment refinement of a starting candidate matrix:
/// Pi_{t+1} maximises <Pi, A Pi_t B> over (rectangular) permutation
/// matrices. A row's streak grows while its assignment repeats and resets
/// when it changes; the flag is set when the final streak exceeds tau.
inline MatchResult refine(const Graph& a, const Graph& b, CandidateMatrix current,
                          const RefineOptions& opt) {
  if (opt.n_rep == 0) throw InputError("refine: n_rep must be positive");
  const double tau = opt.tau.value_or(static_cast<double>(opt.n_rep) / 10.0);
  const std::size_t na = a.num_vertices();
  MatchResult r;
  r.assignment = Assignment(na);
  r.streak.assign(na, 0);
  for (std::size_t t = 0; t < opt.n_rep; ++t) {
    const auto scores = similarity_common_neighbors(a, b, current);
    auto next = linear_assignment_max(scores).assignment;
    for (std::size_t i = 0; i < na; ++i) {
      const auto& prev = current.rows[i];
      const bool same = next.assigned(i) ? (prev.size() == 1 && prev[0] == next[i]) : prev.empty();
      r.streak[i] = same ? r.streak[i] + 1 : 0;
    }
    current = CandidateMatrix::from_assignment(next, b.num_vertices());
    if (opt.trace) opt.trace->push_back(next);
    r.assignment = std::move(next);
  }
  r.flags.assign(na, 0);
  for (std::size_t i = 0; i < na; ++i) {
    if (!r.assignment.assigned(i)) {
      r.streak[i] = 0;
      continue;
    }
    r.flags[i] = static_cast<double>(r.streak[i]) > tau ? 1 : 0;
  }
  return r;
}

/// Edge-exploited matching followed by refinement.
inline MatchResult ee_post(const Graph& a, const Graph& b, std::size_t d, std::size_t n_rep,
                           std::optional<double> tau = std::nullopt,
                           std::vector<Assignment>* trace = nullptr) {
  return refine(a, b, ee_match(a, b, d), RefineOptions{n_rep, tau, trace});
}

}  // namespace dpmatch

#endif  // DPMATCH_MATCHERS_HPP_
