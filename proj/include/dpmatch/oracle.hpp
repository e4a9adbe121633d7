// Copyright 2026 The dpmatch Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DPMATCH_ORACLE_HPP_
#define DPMATCH_ORACLE_HPP_

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "dpmatch/assign.hpp"
#include "dpmatch/error.hpp"
#include "dpmatch/graph.hpp"

namespace dpmatch {

inline constexpr std::size_t kOracleLimit = 8;

struct OracleResult {
  std::int64_t best_value = 0;
  Assignment best_assignment;  // a-vertex -> b-vertex on the witness subsets
  std::size_t subset_size = 0;  // m of the witness
  std::size_t max_subset_size = 0;
  std::uint64_t evaluated = 0;  // (S_A, S_B, permutation) triples visited
};

/// <A, Pi B Pi^T> restricted to the assigned vertices: every ordered pair
/// (i, j) of assigned a-vertices with A(i,j) = B(pi(i), pi(j)) = 1 counts,
/// so each agreeing undirected edge contributes 2.
inline std::int64_t edge_agreement(const Graph& a, const Graph& b, const Assignment& pi) {
  if (pi.n_left() != a.num_vertices()) throw InputError("edge_agreement: assignment size mismatch");
  std::int64_t total = 0;
  for (Vertex i = 0; i < a.num_vertices(); ++i) {
    if (!pi.assigned(i)) continue;
    for (Vertex j : a.neighbors(i))
      if (pi.assigned(j) && b.has_edge(pi[i], pi[j])) ++total;
  }
  return total;
}

/// True when pi is a bijection between the vertex sets that maps edges to
/// edges and non-edges to non-edges.
inline bool is_isomorphism(const Graph& a, const Graph& b, const Assignment& pi) {
  if (a.num_vertices() != b.num_vertices() || a.num_edges() != b.num_edges()) return false;
  if (pi.cardinality() != a.num_vertices() || !pi.is_injective()) return false;
  return edge_agreement(a, b, pi) == static_cast<std::int64_t>(2 * a.num_edges());
}

namespace detail {

inline bool next_combination(std::vector<Vertex>& c, std::size_t n) {
  const std::size_t m = c.size();
  for (std::size_t i = m; i-- > 0;) {
    if (c[i] < n - m + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < m; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace detail

/// Exhaustive maximiser of <A_{S_A}, Pi B_{S_B} Pi^T> over subset size m,
/// subsets S_A and S_B of size m, and all m! bijections between them.
///
/// Both graphs must have at most max_n <= 8 vertices. Enumeration runs over m
/// ascending, subsets in lexicographic order, bijections in lexicographic
/// order; only strictly better values replace the witness.
inline OracleResult exhaustive_match(const Graph& a, const Graph& b, std::size_t max_n = kOracleLimit) {
  if (max_n > kOracleLimit)
    throw TooLargeError("exhaustive_match: max_n may not exceed " + std::to_string(kOracleLimit));
  const std::size_t na = a.num_vertices(), nb = b.num_vertices();
  if (na > max_n || nb > max_n)
    throw TooLargeError("exhaustive_match: instance has more than " + std::to_string(max_n) + " vertices");

  std::vector<std::uint8_t> am(na * na, 0), bm(nb * nb, 0);
  for (const auto& [i, j] : a.edges()) am[i * na + j] = am[j * na + i] = 1;
  for (const auto& [i, j] : b.edges()) bm[i * nb + j] = bm[j * nb + i] = 1;

  OracleResult r;
  r.best_assignment = Assignment(na);
  r.max_subset_size = std::min(na, nb);
  bool have = false;
  for (std::size_t m = 1; m <= r.max_subset_size; ++m) {
    std::vector<Vertex> sa(m);
    std::iota(sa.begin(), sa.end(), 0);
    do {
      std::vector<Vertex> sb(m);
      std::iota(sb.begin(), sb.end(), 0);
      do {
        std::vector<Vertex> perm(m);
        std::iota(perm.begin(), perm.end(), 0);
        do {
          std::int64_t value = 0;
          for (std::size_t u = 0; u < m; ++u)
            for (std::size_t v = 0; v < m; ++v)
              value += am[sa[u] * na + sa[v]] * bm[sb[perm[u]] * nb + sb[perm[v]]];
          ++r.evaluated;
          if (!have || value > r.best_value) {
            have = true;
            r.best_value = value;
            r.subset_size = m;
            r.best_assignment = Assignment(na);
            for (std::size_t u = 0; u < m; ++u) r.best_assignment.to_right[sa[u]] = sb[perm[u]];
          }
        } while (std::next_permutation(perm.begin(), perm.end()));
      } while (detail::next_combination(sb, nb));
    } while (detail::next_combination(sa, na));
  }
  return r;
}

}  // namespace dpmatch

#endif  // DPMATCH_ORACLE_HPP_
