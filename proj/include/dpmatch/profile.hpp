// Copyright 2026 The dpmatch Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DPMATCH_PROFILE_HPP_
#define DPMATCH_PROFILE_HPP_

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <ostream>
#include <vector>

#include "dpmatch/graph.hpp"
#include "dpmatch/matrix.hpp"

namespace dpmatch {

inline constexpr double kInfiniteDistance = std::numeric_limits<double>::infinity();

/// Degrees of a vertex's neighbours, sorted ascending. Each neighbour's full
/// degree is used, including its edge back to the vertex itself.
struct DegreeProfile {
  std::vector<std::uint32_t> values;

  std::size_t size() const noexcept { return values.size(); }
  bool empty() const noexcept { return values.empty(); }

  friend bool operator==(const DegreeProfile&, const DegreeProfile&) = default;
};

inline DegreeProfile degree_profile(const Graph& g, Vertex i) {
  DegreeProfile p;
  const auto nb = g.neighbors(i);
  p.values.reserve(nb.size());
  for (Vertex k : nb) p.values.push_back(static_cast<std::uint32_t>(g.degree(k)));
  std::sort(p.values.begin(), p.values.end());
  return p;
}

inline std::vector<DegreeProfile> degree_profiles(const Graph& g) {
  std::vector<DegreeProfile> out;
  out.reserve(g.num_vertices());
  for (Vertex i = 0; i < g.num_vertices(); ++i) out.push_back(degree_profile(g, i));
  return out;
}

/// 1-Wasserstein distance between the empirical distributions of two
/// profiles, i.e. the integral of |F_mu - F_nu| over the line.
///
/// The CDFs are step functions i/m and j/k, so the integral is accumulated
/// exactly as an integer numerator over m*k. One empty profile gives +inf,
/// two empty profiles give 0.
inline double w1_distance(const DegreeProfile& mu, const DegreeProfile& nu) {
  const std::size_t m = mu.size();
  const std::size_t k = nu.size();
  if (m == 0 || k == 0) return (m == 0 && k == 0) ? 0.0 : kInfiniteDistance;
  const auto& x = mu.values;
  const auto& y = nu.values;
  const auto mk = static_cast<std::int64_t>(m);
  const auto kk = static_cast<std::int64_t>(k);
  std::int64_t i = 0, j = 0;
  std::int64_t prev = std::min(x[0], y[0]);
  std::uint64_t numerator = 0;
  while (i < mk || j < kk) {
    const std::int64_t next_x = i < mk ? x[static_cast<std::size_t>(i)] : INT64_MAX;
    const std::int64_t next_y = j < kk ? y[static_cast<std::size_t>(j)] : INT64_MAX;
    const std::int64_t pos = std::min(next_x, next_y);
    // On [prev, pos) the CDFs are i/m and j/k.
    numerator += static_cast<std::uint64_t>(std::llabs(i * kk - j * mk)) *
                 static_cast<std::uint64_t>(pos - prev);
    while (i < mk && x[static_cast<std::size_t>(i)] == pos) ++i;
    while (j < kk && y[static_cast<std::size_t>(j)] == pos) ++j;
    prev = pos;
  }
  return static_cast<double>(numerator) / (static_cast<double>(m) * static_cast<double>(k));
}

using DistanceMatrix = Matrix<double>;

/// W(i, j) = w1_distance(profile of a's vertex i, profile of b's vertex j).
inline DistanceMatrix distance_matrix(const Graph& a, const Graph& b) {
  const auto pa = degree_profiles(a);
  const auto pb = degree_profiles(b);
  DistanceMatrix w(pa.size(), pb.size());
  for (std::size_t i = 0; i < pa.size(); ++i)
    for (std::size_t j = 0; j < pb.size(); ++j) w(i, j) = w1_distance(pa[i], pb[j]);
  return w;
}

/// Debug dump: "nA nB" header, then one comma-separated row per line.
inline void write_distance_csv(std::ostream& out, const DistanceMatrix& w) {
  out << w.rows() << ' ' << w.cols() << '\n';
  for (std::size_t i = 0; i < w.rows(); ++i) {
    for (std::size_t j = 0; j < w.cols(); ++j) {
      if (j) out << ',';
      if (w(i, j) == kInfiniteDistance)
        out << "inf";
      else
        out << w(i, j);
    }
    out << '\n';
  }
}

}  // namespace dpmatch

#endif  // DPMATCH_PROFILE_HPP_
