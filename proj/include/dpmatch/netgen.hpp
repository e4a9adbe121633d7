// Copyright 2026 The dpmatch Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DPMATCH_NETGEN_HPP_
#define DPMATCH_NETGEN_HPP_

#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dpmatch/error.hpp"
#include "dpmatch/graph.hpp"
#include "dpmatch/matrix.hpp"
#include "dpmatch/random.hpp"

namespace dpmatch {

struct ErSpec {
  std::size_t n = 0;
  double q = 0.0;
};

struct SbmSpec {
  std::vector<std::size_t> block_sizes;
  Matrix<double> p;  // K x K, symmetric
};

using ThetaSpec = std::variant<ErSpec, SbmSpec>;

struct SbmLayout {
  std::vector<std::size_t> labels;  // one per vertex, blocks laid out contiguously
  Matrix<double> p;
};

namespace detail {

inline void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) throw InputError(std::string(what) + " must lie in [0,1]");
}

}  // namespace detail

inline SbmLayout sbm_theta(const SbmSpec& spec) {
  const std::size_t k = spec.block_sizes.size();
  if (k == 0) throw InputError("sbm: no blocks");
  if (spec.p.rows() != k || spec.p.cols() != k)
    throw InputError("sbm: probability matrix must be K x K");
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      detail::check_probability(spec.p(a, b), "sbm: block probability");
      if (spec.p(a, b) != spec.p(b, a)) throw InputError("sbm: probability matrix not symmetric");
    }
  }
  SbmLayout out;
  out.p = spec.p;
  for (std::size_t b = 0; b < k; ++b) {
    if (spec.block_sizes[b] == 0) throw InputError("sbm: empty block");
    out.labels.insert(out.labels.end(), spec.block_sizes[b], b);
  }
  return out;
}

/// K equal blocks (the last absorbs the remainder) with probability q inside
/// a block and q/2 between blocks.
inline SbmSpec planted_partition(std::size_t n, std::size_t k, double q) {
  if (k == 0 || n < k) throw InputError("planted_partition: need 1 <= K <= n");
  SbmSpec spec;
  spec.block_sizes.assign(k, n / k);
  spec.block_sizes.back() += n % k;
  spec.p = Matrix<double>(k, k, q / 2.0);
  for (std::size_t b = 0; b < k; ++b) spec.p(b, b) = q;
  return spec;
}

/// Draws each pair i < j independently with its Theta probability.
inline Graph sample_bernoulli(const ThetaSpec& spec, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Edge> edges;
  if (const auto* er = std::get_if<ErSpec>(&spec)) {
    detail::check_probability(er->q, "er: q");
    for (Vertex i = 0; i < er->n; ++i)
      for (Vertex j = i + 1; j < er->n; ++j)
        if (rng.bernoulli(er->q)) edges.emplace_back(i, j);
    return Graph::from_edges(er->n, edges);
  }
  const auto layout = sbm_theta(std::get<SbmSpec>(spec));
  const std::size_t n = layout.labels.size();
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j)
      if (rng.bernoulli(layout.p(layout.labels[i], layout.labels[j]))) edges.emplace_back(i, j);
  return Graph::from_edges(n, edges);
}

struct ChildSample {
  Graph graph;
  std::vector<Vertex> parent_of;  // child vertex -> parent vertex
};

/// A pair of child graphs of one parent. b was sampled from the parent after
/// relabelling by pi_star, so b.parent_of names vertices of the relabelled
/// parent. truth[i] is the b-vertex sharing a's vertex i's parent, or
/// kNoVertex when that parent was dropped from b.
struct ChildPair {
  ChildSample a;
  ChildSample b;
  Permutation pi_star;
  std::vector<Vertex> truth;

  std::size_t overlap() const {
    std::size_t c = 0;
    for (Vertex t : truth) c += (t != kNoVertex);
    return c;
  }
};

/// Keeps each parent vertex with probability s, then each surviving edge with
/// probability rho.
inline ChildSample sample_child(const Graph& g, double s, double rho, std::uint64_t seed) {
  detail::check_probability(s, "overlap s");
  detail::check_probability(rho, "correlation rho");
  Rng rng(seed);
  std::vector<Vertex> kept;
  for (Vertex i = 0; i < g.num_vertices(); ++i)
    if (rng.bernoulli(s)) kept.push_back(i);
  VertexSet keep(kept);
  const Graph induced = induced_subgraph(g, keep);
  std::vector<Edge> edges;
  for (const auto& e : induced.edges())
    if (rng.bernoulli(rho)) edges.push_back(e);
  return {Graph::from_edges(keep.size(), edges), std::move(kept)};
}

inline std::vector<Vertex> ground_truth(const ChildSample& a, const ChildSample& b,
                                        std::span<const Vertex> pi_star) {
  std::vector<Vertex> b_of_parent(pi_star.size(), kNoVertex);
  for (std::size_t j = 0; j < b.parent_of.size(); ++j)
    b_of_parent[b.parent_of[j]] = static_cast<Vertex>(j);
  std::vector<Vertex> truth(a.parent_of.size(), kNoVertex);
  for (std::size_t i = 0; i < a.parent_of.size(); ++i)
    truth[i] = b_of_parent[pi_star[a.parent_of[i]]];
  return truth;
}

/// Correlated, partially-overlapping pair. pi_star is drawn uniformly over
/// all parent vertices unless a fixed one is supplied.
inline ChildPair make_pair(const Graph& g, double s, double rho, std::uint64_t seed,
                           std::optional<Permutation> fixed_pi = std::nullopt) {
  ChildPair out;
  if (fixed_pi) {
    if (!is_permutation_of(*fixed_pi, g.num_vertices()))
      throw InputError("make_pair: supplied permutation is not a bijection");
    out.pi_star = std::move(*fixed_pi);
  } else {
    out.pi_star = identity_permutation(g.num_vertices());
    Rng rng(derive_seed(seed, {0}));
    rng.shuffle(std::span<Vertex>(out.pi_star));
  }
  out.a = sample_child(g, s, rho, derive_seed(seed, {1}));
  out.b = sample_child(permute(g, out.pi_star), s, rho, derive_seed(seed, {2}));
  out.truth = ground_truth(out.a, out.b, out.pi_star);
  return out;
}

}  // namespace dpmatch

#endif  // DPMATCH_NETGEN_HPP_
