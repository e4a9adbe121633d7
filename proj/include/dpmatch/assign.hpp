// Copyright 2026 The dpmatch Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DPMATCH_ASSIGN_HPP_
#define DPMATCH_ASSIGN_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <type_traits>
#include <utility>
#include <vector>

#include "dpmatch/error.hpp"
#include "dpmatch/graph.hpp"
#include "dpmatch/matrix.hpp"

namespace dpmatch {

/// Partial injective map from left vertices to right vertices.
struct Assignment {
  std::vector<Vertex> to_right;  // kNoVertex when unassigned

  Assignment() = default;
  explicit Assignment(std::size_t n_left) : to_right(n_left, kNoVertex) {}

  std::size_t n_left() const noexcept { return to_right.size(); }
  Vertex operator[](std::size_t i) const noexcept { return to_right[i]; }
  bool assigned(std::size_t i) const noexcept { return to_right[i] != kNoVertex; }

  std::size_t cardinality() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(to_right.begin(), to_right.end(), [](Vertex v) { return v != kNoVertex; }));
  }

  bool is_injective() const {
    std::vector<Vertex> img;
    for (Vertex v : to_right)
      if (v != kNoVertex) img.push_back(v);
    std::sort(img.begin(), img.end());
    return std::adjacent_find(img.begin(), img.end()) == img.end();
  }

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

/// Bipartite graph of allowed (left, right) pairs.
class BipartiteCandidates {
 public:
  BipartiteCandidates(std::size_t n_left, std::size_t n_right)
      : n_right_(n_right), adj_(n_left) {}

  BipartiteCandidates(std::size_t n_left, std::size_t n_right, std::span<const Edge> edges)
      : BipartiteCandidates(n_left, n_right) {
    for (const auto& [l, r] : edges) add(l, r);
    for (auto& row : adj_) {
      std::sort(row.begin(), row.end());
      if (std::adjacent_find(row.begin(), row.end()) != row.end())
        throw InputError("BipartiteCandidates: duplicate pair");
    }
  }

  std::size_t n_left() const noexcept { return adj_.size(); }
  std::size_t n_right() const noexcept { return n_right_; }
  const std::vector<Vertex>& right_of(std::size_t l) const { return adj_[l]; }

  bool contains(Vertex l, Vertex r) const {
    return l < adj_.size() && std::binary_search(adj_[l].begin(), adj_[l].end(), r);
  }

  /// Appends without the duplicate check; callers keep rows sorted and unique.
  void add(Vertex l, Vertex r) {
    if (l >= adj_.size() || r >= n_right_)
      throw InputError("BipartiteCandidates: index out of range");
    adj_[l].push_back(r);
  }

 private:
  std::size_t n_right_;
  std::vector<std::vector<Vertex>> adj_;
};

namespace detail {

class HopcroftKarp {
 public:
  explicit HopcroftKarp(const BipartiteCandidates& c)
      : c_(c),
        match_l_(c.n_left(), kNoVertex),
        match_r_(c.n_right(), kNoVertex),
        dist_(c.n_left()),
        next_(c.n_left()) {}

  Assignment run() {
    while (bfs()) {
      std::fill(next_.begin(), next_.end(), 0);
      for (std::size_t l = 0; l < c_.n_left(); ++l)
        if (match_l_[l] == kNoVertex) dfs(static_cast<Vertex>(l));
    }
    Assignment out;
    out.to_right = match_l_;
    return out;
  }

 private:
  static constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();

  bool bfs() {
    std::queue<Vertex> q;
    for (std::size_t l = 0; l < c_.n_left(); ++l) {
      if (match_l_[l] == kNoVertex) {
        dist_[l] = 0;
        q.push(static_cast<Vertex>(l));
      } else {
        dist_[l] = kInf;
      }
    }
    bool found = false;
    while (!q.empty()) {
      const Vertex l = q.front();
      q.pop();
      for (Vertex r : c_.right_of(l)) {
        const Vertex back = match_r_[r];
        if (back == kNoVertex) {
          found = true;
        } else if (dist_[back] == kInf) {
          dist_[back] = dist_[l] + 1;
          q.push(back);
        }
      }
    }
    return found;
  }

  bool dfs(Vertex l) {
    const auto& row = c_.right_of(l);
    for (std::size_t& k = next_[l]; k < row.size(); ++k) {
      const Vertex r = row[k];
      const Vertex back = match_r_[r];
      if (back == kNoVertex || (dist_[back] == dist_[l] + 1 && dfs(back))) {
        match_l_[l] = r;
        match_r_[r] = l;
        ++k;
        return true;
      }
    }
    dist_[l] = kInf;
    return false;
  }

  const BipartiteCandidates& c_;
  std::vector<Vertex> match_l_;
  std::vector<Vertex> match_r_;
  std::vector<std::size_t> dist_;
  std::vector<std::size_t> next_;
};

}  // namespace detail

/// Maximum-cardinality matching (Hopcroft-Karp). Deterministic: rows are
/// scanned in index order and candidates in ascending right index.
inline Assignment max_bipartite_matching(const BipartiteCandidates& c) {
  return detail::HopcroftKarp(c).run();
}

template <typename T>
struct LinearAssignment {
  Assignment assignment;
  T value{};
};

namespace detail {

// Shortest-augmenting-path Hungarian method minimising cost over an
// n x m matrix with n <= m; every row gets a column.
template <typename T>
std::vector<Vertex> hungarian_min(const Matrix<T>& cost) {
  const std::size_t n = cost.rows();
  const std::size_t m = cost.cols();
  const T inf = std::numeric_limits<T>::has_infinity ? std::numeric_limits<T>::infinity()
                                                     : std::numeric_limits<T>::max();
  // 1-based columns; column 0 is the virtual root of each search.
  std::vector<T> u(n + 1, T{}), v(m + 1, T{});
  std::vector<std::size_t> p(m + 1, 0), way(m + 1, 0);
  std::vector<T> minv(m + 1);
  std::vector<char> used(m + 1);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      const auto row = cost.row(i0 - 1);
      const T ui0 = u[i0];
      T delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const T cur = row[j - 1] - ui0 - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= m; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<Vertex> row_to_col(n, kNoVertex);
  for (std::size_t j = 1; j <= m; ++j)
    if (p[j] != 0) row_to_col[p[j] - 1] = static_cast<Vertex>(j - 1);
  return row_to_col;
}

}  // namespace detail

/// Maximum-weight linear assignment.
///
/// Rectangular inputs behave as if zero-padded to square: every vertex on the
/// smaller side is assigned, and when there are more rows than columns the
/// surplus rows are reported unassigned. Integral T keeps the arithmetic exact.
template <typename T>
LinearAssignment<T> linear_assignment_max(const Matrix<T>& m) {
  static_assert(std::is_arithmetic_v<T>);
  if constexpr (std::is_floating_point_v<T>) {
    for (T x : m.data())
      if (!std::isfinite(x)) throw InputError("linear_assignment_max: non-finite entry");
  }
  LinearAssignment<T> out;
  out.assignment = Assignment(m.rows());
  if (m.rows() == 0 || m.cols() == 0) return out;

  const bool transpose = m.rows() > m.cols();
  const Matrix<T>& src = m;
  Matrix<T> cost(transpose ? m.cols() : m.rows(), transpose ? m.rows() : m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (transpose)
        cost(j, i) = -src(i, j);
      else
        cost(i, j) = -src(i, j);
    }
  const auto row_to_col = detail::hungarian_min(cost);
  if (transpose) {
    for (std::size_t j = 0; j < row_to_col.size(); ++j)
      out.assignment.to_right[row_to_col[j]] = static_cast<Vertex>(j);
  } else {
    out.assignment.to_right = row_to_col;
  }
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (out.assignment.assigned(i)) out.value += m(i, out.assignment[i]);
  return out;
}

}  // namespace dpmatch

#endif  // DPMATCH_ASSIGN_HPP_
