// Copyright 2026 The dpmatch Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DPMATCH_COMMUNITY_HPP_
#define DPMATCH_COMMUNITY_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "dpmatch/error.hpp"
#include "dpmatch/graph.hpp"
#include "dpmatch/matchers.hpp"
#include "dpmatch/matrix.hpp"
#include "dpmatch/random.hpp"

namespace dpmatch {

struct CommunityPartition {
  std::vector<std::size_t> labels;
  std::size_t k = 0;

  VertexSet members(std::size_t c) const {
    std::vector<Vertex> v;
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == c) v.push_back(static_cast<Vertex>(i));
    return VertexSet(std::move(v));
  }
};

// ---------------------------------------------------------------------------
// Leading eigenpairs of a sparse adjacency matrix.

struct EigenOptions {
  double tolerance = 1e-8;
  std::size_t max_iterations = 0;  // 0: 10 * n
  std::uint64_t seed = 0x5C0E;
};

struct EigenPairs {
  std::vector<double> values;  // sorted by decreasing magnitude
  Matrix<double> vectors;      // n x K, unit-length columns
  std::size_t iterations = 0;
};

namespace detail {

// Cyclic Jacobi for a small dense symmetric matrix. Returns eigenvalues and
// the column eigenvectors.
inline std::pair<std::vector<double>, Matrix<double>> jacobi_eigen(Matrix<double> h) {
  const std::size_t p = h.rows();
  Matrix<double> v(p, p, 0.0);
  for (std::size_t i = 0; i < p; ++i) v(i, i) = 1.0;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = i + 1; j < p; ++j) off += h(i, j) * h(i, j);
    if (off < 1e-30) break;
    for (std::size_t r = 0; r < p; ++r) {
      for (std::size_t c = r + 1; c < p; ++c) {
        if (std::abs(h(r, c)) < 1e-300) continue;
        const double theta = (h(c, c) - h(r, r)) / (2.0 * h(r, c));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double cs = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * cs;
        for (std::size_t k = 0; k < p; ++k) {
          const double hkr = h(k, r), hkc = h(k, c);
          h(k, r) = cs * hkr - sn * hkc;
          h(k, c) = sn * hkr + cs * hkc;
        }
        for (std::size_t k = 0; k < p; ++k) {
          const double hrk = h(r, k), hck = h(c, k);
          h(r, k) = cs * hrk - sn * hck;
          h(c, k) = sn * hrk + cs * hck;
        }
        for (std::size_t k = 0; k < p; ++k) {
          const double vkr = v(k, r), vkc = v(k, c);
          v(k, r) = cs * vkr - sn * vkc;
          v(k, c) = sn * vkr + cs * vkc;
        }
      }
    }
  }
  std::vector<double> vals(p);
  for (std::size_t i = 0; i < p; ++i) vals[i] = h(i, i);
  return {vals, v};
}

// Y = A X for an n x p block.
inline void adjacency_times(const Graph& g, const Matrix<double>& x, Matrix<double>& y) {
  const std::size_t p = x.cols();
  for (Vertex i = 0; i < g.num_vertices(); ++i) {
    auto out = y.row(i);
    std::fill(out.begin(), out.end(), 0.0);
    for (Vertex j : g.neighbors(i)) {
      const auto in = x.row(j);
      for (std::size_t c = 0; c < p; ++c) out[c] += in[c];
    }
  }
}

// Modified Gram-Schmidt, applied twice. Columns that vanish are replaced by
// fresh random directions.
inline void orthonormalize(Matrix<double>& q, Rng& rng) {
  const std::size_t n = q.rows(), p = q.cols();
  for (std::size_t c = 0; c < p; ++c) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t prev = 0; prev < c; ++prev) {
        double dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) dot += q(i, c) * q(i, prev);
        for (std::size_t i = 0; i < n; ++i) q(i, c) -= dot * q(i, prev);
      }
      double norm = 0.0;
      for (std::size_t i = 0; i < n; ++i) norm += q(i, c) * q(i, c);
      norm = std::sqrt(norm);
      if (norm < 1e-300) {
        for (std::size_t i = 0; i < n; ++i) q(i, c) = rng.uniform() - 0.5;
        --pass;  // redo this pass with the new direction
        continue;
      }
      for (std::size_t i = 0; i < n; ++i) q(i, c) /= norm;
    }
  }
}

}  // namespace detail

/// K eigenpairs of the adjacency matrix with the largest |eigenvalue|, by
/// orthogonal (block power) iteration with Rayleigh-Ritz extraction on a
/// block of K + 2 columns. Converged when every wanted residual
/// ||A v - lambda v|| is below tolerance * max(1, |lambda_1|).
inline EigenPairs leading_eigenpairs(const Graph& g, std::size_t k, const EigenOptions& opt = {}) {
  const std::size_t n = g.num_vertices();
  if (k == 0 || k > n) throw InputError("leading_eigenpairs: need 1 <= K <= n");
  const std::size_t p = std::min(n, k + 2);
  const std::size_t cap = opt.max_iterations ? opt.max_iterations : 10 * n;
  Rng rng(opt.seed);
  Matrix<double> q(n, p);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = 0; c < p; ++c) q(i, c) = rng.uniform() - 0.5;
  detail::orthonormalize(q, rng);

  Matrix<double> aq(n, p);
  EigenPairs out;
  std::vector<double> ritz;
  Matrix<double> rot;
  for (std::size_t it = 1; it <= cap; ++it) {
    out.iterations = it;
    detail::adjacency_times(g, q, aq);
    // Rayleigh-Ritz on span(q).
    Matrix<double> h(p, p, 0.0);
    for (std::size_t a = 0; a < p; ++a)
      for (std::size_t b = a; b < p; ++b) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += q(i, a) * aq(i, b);
        h(a, b) = h(b, a) = s;
      }
    std::tie(ritz, rot) = detail::jacobi_eigen(h);
    std::vector<std::size_t> order(p);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      if (std::abs(ritz[x]) != std::abs(ritz[y])) return std::abs(ritz[x]) > std::abs(ritz[y]);
      return ritz[x] > ritz[y];
    });
    Matrix<double> vq(n, p, 0.0), vaq(n, p, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t c = 0; c < p; ++c) {
        double s = 0.0, t = 0.0;
        for (std::size_t r = 0; r < p; ++r) {
          s += q(i, r) * rot(r, order[c]);
          t += aq(i, r) * rot(r, order[c]);
        }
        vq(i, c) = s;
        vaq(i, c) = t;
      }
    std::vector<double> sorted(p);
    for (std::size_t c = 0; c < p; ++c) sorted[c] = ritz[order[c]];

    const double scale = std::max(1.0, std::abs(sorted[0]));
    bool converged = true;
    for (std::size_t c = 0; c < k && converged; ++c) {
      double res = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double d = vaq(i, c) - sorted[c] * vq(i, c);
        res += d * d;
      }
      converged = std::sqrt(res) <= opt.tolerance * scale;
    }
    if (converged || it == cap) {
      out.values.assign(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(k));
      out.vectors = Matrix<double>(n, k);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t c = 0; c < k; ++c) out.vectors(i, c) = vq(i, c);
      break;
    }
    q = std::move(vaq);
    detail::orthonormalize(q, rng);
  }
  return out;
}

// ---------------------------------------------------------------------------
// k-means.

struct KMeansOptions {
  std::size_t restarts = 10;
  std::size_t max_iterations = 100;
  std::uint64_t seed = 0xC1u;
  std::vector<std::vector<double>>* objective_trace = nullptr;  // one series per restart
};

struct KMeansResult {
  std::vector<std::size_t> labels;
  Matrix<double> centers;
  double objective = 0.0;  // within-cluster sum of squares
};

namespace detail {

inline double squared_distance(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t c = 0; c < x.size(); ++c) s += (x[c] - y[c]) * (x[c] - y[c]);
  return s;
}

inline KMeansResult lloyd(const Matrix<double>& pts, std::size_t k, Rng& rng,
                          std::size_t max_iterations, std::vector<double>* trace) {
  const std::size_t n = pts.rows(), dim = pts.cols();
  KMeansResult r;
  r.centers = Matrix<double>(k, dim);
  // k-means++ seeding.
  std::vector<double> best_d(n, std::numeric_limits<double>::infinity());
  std::size_t first = static_cast<std::size_t>(rng.below(n));
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t pick = first;
    if (c > 0) {
      double total = 0.0;
      for (double d : best_d) total += d;
      if (total > 0.0) {
        double u = rng.uniform() * total;
        pick = n - 1;
        for (std::size_t i = 0; i < n; ++i) {
          u -= best_d[i];
          if (u < 0.0) {
            pick = i;
            break;
          }
        }
      } else {
        pick = static_cast<std::size_t>(rng.below(n));
      }
    }
    std::copy(pts.row(pick).begin(), pts.row(pick).end(), r.centers.row(c).begin());
    for (std::size_t i = 0; i < n; ++i)
      best_d[i] = std::min(best_d[i], squared_distance(pts.row(i), r.centers.row(c)));
  }

  r.labels.assign(n, k);
  std::vector<double> dist(n);
  for (std::size_t it = 0; it < max_iterations; ++it) {
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t arg = 0;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < k; ++c) {
        const double d = squared_distance(pts.row(i), r.centers.row(c));
        if (d < best) {
          best = d;
          arg = c;
        }
      }
      if (arg != r.labels[i]) changed = true;
      r.labels[i] = arg;
      dist[i] = best;
    }
    // Empty clusters take the point farthest from its centre.
    std::vector<std::size_t> size(k, 0);
    for (std::size_t l : r.labels) ++size[l];
    for (std::size_t c = 0; c < k; ++c) {
      if (size[c] > 0) continue;
      std::size_t far = 0;
      for (std::size_t i = 1; i < n; ++i)
        if (dist[i] > dist[far] && size[r.labels[i]] > 1) far = i;
      if (size[r.labels[far]] <= 1) continue;
      --size[r.labels[far]];
      r.labels[far] = c;
      dist[far] = 0.0;
      ++size[c];
      changed = true;
    }
    Matrix<double> sum(k, dim, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t d = 0; d < dim; ++d) sum(r.labels[i], d) += pts(i, d);
    for (std::size_t c = 0; c < k; ++c)
      if (size[c] > 0)
        for (std::size_t d = 0; d < dim; ++d) r.centers(c, d) = sum(c, d) / static_cast<double>(size[c]);
    r.objective = 0.0;
    for (std::size_t i = 0; i < n; ++i) r.objective += squared_distance(pts.row(i), r.centers.row(r.labels[i]));
    if (trace) trace->push_back(r.objective);
    if (!changed) break;
  }
  return r;
}

}  // namespace detail

/// Lloyd's algorithm with k-means++ seeding; the best of several seeded
/// restarts is kept (first restart wins ties).
inline KMeansResult kmeans(const Matrix<double>& points, std::size_t k, const KMeansOptions& opt = {}) {
  if (k == 0 || k > points.rows()) throw InputError("kmeans: need 1 <= K <= number of points");
  Rng rng(opt.seed);
  std::optional<KMeansResult> best;
  for (std::size_t r = 0; r < std::max<std::size_t>(1, opt.restarts); ++r) {
    std::vector<double>* trace = nullptr;
    if (opt.objective_trace) trace = &opt.objective_trace->emplace_back();
    auto res = detail::lloyd(points, k, rng, opt.max_iterations, trace);
    if (!best || res.objective < best->objective) best = std::move(res);
  }
  return std::move(*best);
}

// ---------------------------------------------------------------------------
// SCORE.

struct ScoreOptions {
  EigenOptions eigen;
  KMeansOptions kmeans;
  double denominator_floor = 1e-12;
  Matrix<double>* ratios_out = nullptr;  // receives the n x (K-1) ratio matrix
};

/// Spectral clustering on ratios of eigenvectors.
///
/// The leading eigenvector v1 is oriented to a non-negative entry sum. Each
/// further eigenvector is divided entrywise by v1 (denominators smaller than
/// the floor are replaced by the signed floor) and truncated to
/// [-log n, log n]; k-means on the rows gives the communities. Communities
/// are numbered by first appearance in vertex order.
inline CommunityPartition score(const Graph& a, std::size_t k, const ScoreOptions& opt = {}) {
  const std::size_t n = a.num_vertices();
  if (k < 2) throw InputError("score: K must be at least 2");
  if (n < k) throw InputError("score: fewer vertices than communities");
  if (a.num_edges() == 0) throw NumericalError("score: graph has no edges");
  auto eig = leading_eigenpairs(a, k, opt.eigen);
  const double lead = std::abs(eig.values[0]);
  if (std::abs(eig.values[k - 1]) <= 1e-9 * lead)
    throw NumericalError("score: fewer than K numerically non-zero leading eigenvalues");

  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += eig.vectors(i, 0);
  if (sum < 0.0)
    for (std::size_t i = 0; i < n; ++i) eig.vectors(i, 0) = -eig.vectors(i, 0);

  const double bound = std::log(static_cast<double>(n));
  Matrix<double> ratios(n, k - 1);
  for (std::size_t i = 0; i < n; ++i) {
    double den = eig.vectors(i, 0);
    if (std::abs(den) < opt.denominator_floor) den = den < 0.0 ? -opt.denominator_floor : opt.denominator_floor;
    for (std::size_t c = 1; c < k; ++c)
      ratios(i, c - 1) = std::clamp(eig.vectors(i, c) / den, -bound, bound);
  }
  if (opt.ratios_out) *opt.ratios_out = ratios;

  const auto km = kmeans(ratios, k, opt.kmeans);
  CommunityPartition part;
  part.k = k;
  part.labels.assign(n, 0);
  std::vector<std::size_t> relabel(k, k);
  std::size_t next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (relabel[km.labels[i]] == k) relabel[km.labels[i]] = next++;
    part.labels[i] = relabel[km.labels[i]];
  }
  return part;
}

// ---------------------------------------------------------------------------
// Community-aware matching.

enum class Matcher { kDp, kEePost };

struct MatcherParams {
  std::size_t d = 10;
  std::size_t n_rep = 50;
  std::optional<double> tau;
};

struct PermutationMatch {
  std::vector<std::size_t> mu;  // a-community k is matched to b-community mu[k]
  MatchResult result;           // over the full vertex sets
  double eval = 0.0;            // matched count (DP) or converged count (EE-post)
};

struct CommunityMatchOutcome {
  std::vector<std::size_t> community_bijection;
  MatchResult global_result;
  double eval_score = 0.0;
};

inline constexpr std::size_t kMaxCommunities = 6;

namespace detail {

inline MatchResult run_matcher(const Graph& a, const Graph& b, Matcher m, const MatcherParams& p) {
  if (m == Matcher::kDp) return dp_match(a, b);
  return ee_post(a, b, p.d, p.n_rep, p.tau);
}

inline double evaluate(const MatchResult& r, Matcher m) {
  return static_cast<double>(m == Matcher::kDp ? r.matched_count() : r.converged_count());
}

}  // namespace detail

/// For every bijection mu between communities (lexicographic order), matches
/// each a-community k against b-community mu[k] and unions the results in
/// global indices. Each of the K*K community pairs is matched once and
/// reused across the permutations containing it.
inline std::vector<PermutationMatch> community_match_all(const Graph& a, const Graph& b,
                                                         const CommunityPartition& pa,
                                                         const CommunityPartition& pb, Matcher matcher,
                                                         const MatcherParams& params) {
  const std::size_t k = pa.k;
  if (pb.k != k) throw InputError("community_match_all: partitions disagree on K");
  if (k < 1 || k > kMaxCommunities) throw InputError("community_match_all: K must be in [1, 6]");
  if (pa.labels.size() != a.num_vertices() || pb.labels.size() != b.num_vertices())
    throw InputError("community_match_all: partition size mismatch");

  std::vector<VertexSet> va(k), vb(k);
  std::vector<Graph> ga(k), gb(k);
  for (std::size_t c = 0; c < k; ++c) {
    va[c] = pa.members(c);
    vb[c] = pb.members(c);
    ga[c] = induced_subgraph(a, va[c]);
    gb[c] = induced_subgraph(b, vb[c]);
  }
  std::map<std::pair<std::size_t, std::size_t>, MatchResult> cache;
  auto local = [&](std::size_t ca, std::size_t cb) -> const MatchResult& {
    auto it = cache.find({ca, cb});
    if (it == cache.end())
      it = cache.emplace(std::make_pair(ca, cb), detail::run_matcher(ga[ca], gb[cb], matcher, params)).first;
    return it->second;
  };

  std::vector<PermutationMatch> out;
  std::vector<std::size_t> mu(k);
  std::iota(mu.begin(), mu.end(), 0);
  do {
    PermutationMatch pm;
    pm.mu = mu;
    pm.result.assignment = Assignment(a.num_vertices());
    pm.result.flags.assign(a.num_vertices(), 0);
    pm.result.streak.assign(a.num_vertices(), 0);
    for (std::size_t c = 0; c < k; ++c) {
      const MatchResult& r = local(c, mu[c]);
      for (std::size_t i = 0; i < va[c].size(); ++i) {
        const Vertex gi = va[c][i];
        if (r.assignment.assigned(i)) pm.result.assignment.to_right[gi] = vb[mu[c]][r.assignment[i]];
        pm.result.flags[gi] = r.flags[i];
        pm.result.streak[gi] = r.streak[i];
      }
      pm.eval += detail::evaluate(r, matcher);
    }
    out.push_back(std::move(pm));
  } while (std::next_permutation(mu.begin(), mu.end()));
  return out;
}

/// The permutation with the largest evaluation; ties go to the
/// lexicographically smallest mu.
inline const PermutationMatch& best_permutation(const std::vector<PermutationMatch>& all) {
  if (all.empty()) throw InputError("best_permutation: no candidates");
  std::size_t best = 0;
  for (std::size_t i = 1; i < all.size(); ++i)
    if (all[i].eval > all[best].eval) best = i;
  return all[best];
}

/// Community matching followed by global refinement: the best permutation's
/// union seeds the refinement loop on the full graphs.
inline CommunityMatchOutcome community_match_refined(const Graph& a, const Graph& b,
                                                     const CommunityPartition& pa,
                                                     const CommunityPartition& pb, Matcher matcher,
                                                     const MatcherParams& params) {
  const auto all = community_match_all(a, b, pa, pb, matcher, params);
  const auto& best = best_permutation(all);
  CommunityMatchOutcome out;
  out.community_bijection = best.mu;
  out.eval_score = best.eval;
  out.global_result = refine(a, b, CandidateMatrix::from_assignment(best.result.assignment, b.num_vertices()),
                             RefineOptions{params.n_rep, params.tau, nullptr});
  return out;
}

}  // namespace dpmatch

#endif  // DPMATCH_COMMUNITY_HPP_
