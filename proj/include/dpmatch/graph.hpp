// Copyright 2026 The dpmatch Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DPMATCH_GRAPH_HPP_
#define DPMATCH_GRAPH_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <limits>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "dpmatch/error.hpp"
#include "dpmatch/matrix.hpp"

namespace dpmatch {

using Vertex = std::uint32_t;
inline constexpr Vertex kNoVertex = std::numeric_limits<Vertex>::max();

using Edge = std::pair<Vertex, Vertex>;

/// A bijection on [0, n): vertex i is sent to perm[i].
using Permutation = std::vector<Vertex>;

/// Strictly increasing list of vertex indices.
class VertexSet {
 public:
  VertexSet() = default;

  /// Sorts and validates. Duplicates are an input error.
  explicit VertexSet(std::vector<Vertex> vertices) : v_(std::move(vertices)) {
    std::sort(v_.begin(), v_.end());
    if (std::adjacent_find(v_.begin(), v_.end()) != v_.end())
      throw InputError("VertexSet: duplicate vertex");
  }

  static VertexSet all(std::size_t n) {
    std::vector<Vertex> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<Vertex>(i);
    return VertexSet(std::move(v));
  }

  std::size_t size() const noexcept { return v_.size(); }
  bool empty() const noexcept { return v_.empty(); }
  Vertex operator[](std::size_t k) const noexcept { return v_[k]; }
  auto begin() const noexcept { return v_.begin(); }
  auto end() const noexcept { return v_.end(); }
  std::span<const Vertex> view() const noexcept { return v_; }

  bool contains(Vertex x) const { return std::binary_search(v_.begin(), v_.end(), x); }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  std::vector<Vertex> v_;
};

/// Undirected simple graph stored as sorted adjacency lists (CSR layout).
///
/// Immutable after construction. Invariants: j in adj(i) iff i in adj(j),
/// no self-loops, every adjacency list strictly increasing.
class Graph {
 public:
  Graph() : offsets_(1, 0) {}

  /// Empty graph on n vertices.
  explicit Graph(std::size_t n) : n_(n), offsets_(n + 1, 0) {}

  /// Builds from an edge list. Self-loops and duplicate edges are dropped.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges) {
    std::vector<std::size_t> count(n + 1, 0);
    for (const auto& [u, v] : edges) {
      if (u >= n || v >= n)
        throw InputError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                         ") out of range for n=" + std::to_string(n));
      if (u == v) continue;
      ++count[u];
      ++count[v];
    }
    Graph g(n);
    for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] = g.offsets_[i] + count[i];
    g.adj_.resize(g.offsets_[n]);
    std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const auto& [u, v] : edges) {
      if (u == v) continue;
      g.adj_[fill[u]++] = v;
      g.adj_[fill[v]++] = u;
    }
    g.normalize();
    return g;
  }

  std::size_t num_vertices() const noexcept { return n_; }
  std::size_t num_edges() const noexcept { return adj_.size() / 2; }

  std::span<const Vertex> neighbors(Vertex i) const {
    check(i);
    return {adj_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
  }

  std::size_t degree(Vertex i) const {
    check(i);
    return offsets_[i + 1] - offsets_[i];
  }

  bool has_edge(Vertex i, Vertex j) const {
    auto nb = neighbors(i);
    return std::binary_search(nb.begin(), nb.end(), j);
  }

  std::vector<std::size_t> degrees() const {
    std::vector<std::size_t> d(n_);
    for (std::size_t i = 0; i < n_; ++i) d[i] = offsets_[i + 1] - offsets_[i];
    return d;
  }

  /// Each undirected edge once, as (i, j) with i < j, in lexicographic order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(num_edges());
    for (Vertex i = 0; i < n_; ++i)
      for (Vertex j : neighbors(i))
        if (i < j) out.emplace_back(i, j);
    return out;
  }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  void check(Vertex i) const {
    if (i >= n_)
      throw InputError("vertex " + std::to_string(i) + " out of range for n=" +
                       std::to_string(n_));
  }

  // Sort each list and squeeze out duplicates.
  void normalize() {
    std::vector<std::size_t> new_offsets(n_ + 1, 0);
    std::size_t out = 0;
    for (std::size_t i = 0; i < n_; ++i) {
      auto first = adj_.begin() + static_cast<std::ptrdiff_t>(offsets_[i]);
      auto last = adj_.begin() + static_cast<std::ptrdiff_t>(offsets_[i + 1]);
      std::sort(first, last);
      auto uniq = std::unique(first, last);
      for (auto it = first; it != uniq; ++it) adj_[out++] = *it;
      new_offsets[i + 1] = out;
    }
    adj_.resize(out);
    offsets_ = std::move(new_offsets);
  }

  std::size_t n_ = 0;
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> adj_;
};

inline Graph from_edge_list(std::size_t n, std::span<const Edge> edges) {
  return Graph::from_edges(n, edges);
}

inline std::size_t degree(const Graph& g, Vertex i) { return g.degree(i); }

/// Subgraph on the vertices of s, relabelled 0..|s|-1 in the sorted order of s
/// (so the index map new -> old is s itself).
inline Graph induced_subgraph(const Graph& g, const VertexSet& s) {
  const std::size_t n = g.num_vertices();
  std::vector<Vertex> to_new(n, kNoVertex);
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s[k] >= n) throw InputError("induced_subgraph: vertex outside host graph");
    to_new[s[k]] = static_cast<Vertex>(k);
  }
  std::vector<Edge> edges;
  for (std::size_t k = 0; k < s.size(); ++k)
    for (Vertex j : g.neighbors(s[k]))
      if (to_new[j] != kNoVertex && s[k] < j) edges.emplace_back(static_cast<Vertex>(k), to_new[j]);
  return Graph::from_edges(s.size(), edges);
}

inline bool is_permutation_of(std::span<const Vertex> pi, std::size_t n) {
  if (pi.size() != n) return false;
  std::vector<bool> seen(n, false);
  for (Vertex v : pi) {
    if (v >= n || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

inline Permutation inverse(std::span<const Vertex> pi) {
  Permutation inv(pi.size());
  for (std::size_t i = 0; i < pi.size(); ++i) inv[pi[i]] = static_cast<Vertex>(i);
  return inv;
}

inline Permutation identity_permutation(std::size_t n) {
  Permutation p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<Vertex>(i);
  return p;
}

/// Relabels vertex i as pi[i].
inline Graph permute(const Graph& g, std::span<const Vertex> pi) {
  if (!is_permutation_of(pi, g.num_vertices()))
    throw InputError("permute: not a bijection on the vertex set");
  std::vector<Edge> edges;
  edges.reserve(g.num_edges());
  for (const auto& [i, j] : g.edges()) edges.emplace_back(pi[i], pi[j]);
  return Graph::from_edges(g.num_vertices(), edges);
}

/// Edge (i, j) for i != j whenever w(i, j) >= t.
inline Graph threshold_to_graph(const Matrix<double>& w, double t) {
  if (w.rows() != w.cols()) throw InputError("threshold_to_graph: matrix is not square");
  const std::size_t n = w.rows();
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!std::isfinite(w(i, j))) throw InputError("threshold_to_graph: non-finite entry");
      if (w(i, j) != w(j, i)) throw InputError("threshold_to_graph: matrix is not symmetric");
      if (i < j && w(i, j) >= t) edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(j));
    }
  }
  return Graph::from_edges(n, edges);
}

/// Drops zero-degree vertices. Returns the pruned graph and the kept
/// vertices (new index -> old index).
inline std::pair<Graph, VertexSet> prune_isolated(const Graph& g) {
  std::vector<Vertex> keep;
  for (Vertex i = 0; i < g.num_vertices(); ++i)
    if (g.degree(i) > 0) keep.push_back(i);
  VertexSet s(std::move(keep));
  return {induced_subgraph(g, s), s};
}

/// Reads the edge-list text format: one "u v" pair per line, '#' comments,
/// an optional "n <count>" line fixing the vertex count (otherwise
/// max index + 1). Indices in the file are offset by index_base.
inline Graph read_edge_list(std::istream& in, unsigned index_base = 0) {
  std::vector<Edge> edges;
  std::size_t declared_n = 0;
  bool has_n = false;
  std::size_t max_index = 0;
  bool any = false;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line.substr(first));
    if (line[first] == 'n') {
      std::string tag;
      long long count = -1;
      if (!(ls >> tag >> count) || tag != "n" || count < 0)
        throw InputError("edge list line " + std::to_string(lineno) + ": bad header");
      declared_n = static_cast<std::size_t>(count);
      has_n = true;
      continue;
    }
    long long u = -1, v = -1;
    if (!(ls >> u >> v))
      throw InputError("edge list line " + std::to_string(lineno) + ": expected two integers");
    u -= index_base;
    v -= index_base;
    if (u < 0 || v < 0 || u >= std::numeric_limits<Vertex>::max() ||
        v >= std::numeric_limits<Vertex>::max())
      throw InputError("edge list line " + std::to_string(lineno) + ": index out of range");
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    max_index = std::max({max_index, static_cast<std::size_t>(u), static_cast<std::size_t>(v)});
    any = true;
  }
  const std::size_t n = has_n ? declared_n : (any ? max_index + 1 : 0);
  return Graph::from_edges(n, edges);
}

inline void write_edge_list(std::ostream& out, const Graph& g) {
  out << "n " << g.num_vertices() << '\n';
  for (const auto& [i, j] : g.edges()) out << i << ' ' << j << '\n';
}

}  // namespace dpmatch

#endif  // DPMATCH_GRAPH_HPP_
