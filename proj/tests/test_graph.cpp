// Copyright 2026 The dpmatch Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <sstream>

#include "dpmatch/graph.hpp"
#include "dpmatch/random.hpp"

using namespace dpmatch;

namespace {

Graph make(std::size_t n, std::vector<Edge> e) { return Graph::from_edges(n, e); }
Graph triangle() { return make(3, {{0, 1}, {1, 2}, {0, 2}}); }
Graph cycle4() { return make(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}); }

}  // namespace

TEST(Graph, DuplicateEdgesCollapse) {
  const auto g = make(3, {{0, 1}, {1, 2}, {0, 1}});
  EXPECT_EQ(g.num_edges(), 2u);
  EXPECT_EQ(g.degrees(), (std::vector<std::size_t>{1, 2, 1}));
}

TEST(Graph, SelfLoopDropped) {
  const auto g = make(2, {{0, 0}});
  EXPECT_EQ(g.num_vertices(), 2u);
  EXPECT_EQ(g.num_edges(), 0u);
}

TEST(Graph, FourCycle) {
  const auto g = cycle4();
  EXPECT_EQ(g.num_edges(), 4u);
  for (Vertex i = 0; i < 4; ++i) EXPECT_EQ(g.degree(i), 2u);
  EXPECT_TRUE(g.has_edge(3, 0));
  EXPECT_FALSE(g.has_edge(0, 2));
}

TEST(Graph, EndpointOutOfRangeThrows) {
  EXPECT_THROW(make(2, {{0, 2}}), InputError);
}

TEST(Graph, DegreeExamples) {
  EXPECT_EQ(degree(triangle(), 0), 2u);
  EXPECT_EQ(degree(Graph(5), 3), 0u);
  const auto star = make(4, {{0, 1}, {0, 2}, {0, 3}});
  EXPECT_EQ(degree(star, 0), 3u);
  EXPECT_THROW(degree(star, 4), InputError);
  EXPECT_THROW(star.neighbors(9), InputError);
}

TEST(Graph, EdgesAreCanonical) {
  const auto g = make(4, {{3, 1}, {2, 0}, {1, 0}});
  EXPECT_EQ(g.edges(), (std::vector<Edge>{{0, 1}, {0, 2}, {1, 3}}));
}

TEST(Graph, AdjacencyIsSymmetricAndSorted) {
  Rng rng(5);
  std::vector<Edge> e;
  for (int k = 0; k < 200; ++k)
    e.emplace_back(static_cast<Vertex>(rng.below(40)), static_cast<Vertex>(rng.below(40)));
  const auto g = make(40, e);
  std::size_t total = 0;
  for (Vertex i = 0; i < 40; ++i) {
    const auto nb = g.neighbors(i);
    total += nb.size();
    for (std::size_t k = 0; k < nb.size(); ++k) {
      EXPECT_NE(nb[k], i);
      if (k) {
        EXPECT_LT(nb[k - 1], nb[k]);
      }
      EXPECT_TRUE(g.has_edge(nb[k], i));
    }
  }
  EXPECT_EQ(total, 2 * g.num_edges());
}

TEST(VertexSet, SortsAndRejectsDuplicates) {
  const VertexSet s({3, 1, 2});
  EXPECT_EQ(s[0], 1u);
  EXPECT_TRUE(s.contains(3));
  EXPECT_FALSE(s.contains(0));
  EXPECT_THROW(VertexSet({1, 1}), InputError);
}

TEST(InducedSubgraph, Examples) {
  const auto p = induced_subgraph(cycle4(), VertexSet({0, 1, 2}));
  EXPECT_EQ(p, make(3, {{0, 1}, {1, 2}}));
  EXPECT_EQ(induced_subgraph(cycle4(), VertexSet::all(4)), cycle4());
  EXPECT_EQ(induced_subgraph(triangle(), VertexSet({0, 1})), make(2, {{0, 1}}));
  EXPECT_THROW(induced_subgraph(triangle(), VertexSet({0, 5})), InputError);
}

TEST(Permute, Examples) {
  const auto path = make(3, {{0, 1}, {1, 2}});
  EXPECT_EQ(permute(cycle4(), identity_permutation(4)), cycle4());
  const auto q = permute(path, Permutation{2, 1, 0});
  EXPECT_EQ(q.degrees(), path.degrees());
  EXPECT_TRUE(q.has_edge(2, 1));
  EXPECT_THROW(permute(path, Permutation{0, 0, 1}), InputError);
  EXPECT_THROW(permute(path, Permutation{0, 1}), InputError);
}

TEST(Permute, InverseRoundTrip) {
  Rng rng(11);
  Permutation pi = identity_permutation(30);
  rng.shuffle(std::span<Vertex>(pi));
  std::vector<Edge> e;
  for (int k = 0; k < 60; ++k)
    e.emplace_back(static_cast<Vertex>(rng.below(30)), static_cast<Vertex>(rng.below(30)));
  const auto g = make(30, e);
  const auto h = permute(g, pi);
  for (const auto& [i, j] : g.edges()) EXPECT_TRUE(h.has_edge(pi[i], pi[j]));
  EXPECT_EQ(permute(h, inverse(pi)), g);
}

TEST(Threshold, Examples) {
  Matrix<double> w(4, 4, 1.0);
  for (std::size_t i = 0; i < 4; ++i) w(i, i) = 0.0;
  EXPECT_EQ(threshold_to_graph(w, 0.5).num_edges(), 6u);
  EXPECT_EQ(threshold_to_graph(w, 1.5).num_edges(), 0u);
}

TEST(Threshold, NestedInThreshold) {
  Rng rng(3);
  Matrix<double> w(25, 25);
  for (std::size_t i = 0; i < 25; ++i)
    for (std::size_t j = i + 1; j < 25; ++j) w(i, j) = w(j, i) = rng.uniform();
  const auto lo = threshold_to_graph(w, 0.4);
  const auto hi = threshold_to_graph(w, 0.7);
  for (const auto& [i, j] : hi.edges()) EXPECT_TRUE(lo.has_edge(i, j));
  EXPECT_LE(hi.num_edges(), lo.num_edges());
}

TEST(Threshold, Errors) {
  EXPECT_THROW(threshold_to_graph(Matrix<double>(2, 3), 0.1), InputError);
  Matrix<double> w(2, 2);
  w(0, 1) = 1.0;
  EXPECT_THROW(threshold_to_graph(w, 0.1), InputError);
  w(1, 0) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(threshold_to_graph(w, 0.1), InputError);
}

TEST(PruneIsolated, KeepsOnlyTouchedVertices) {
  const auto [g, keep] = prune_isolated(make(5, {{1, 3}}));
  EXPECT_EQ(g, make(2, {{0, 1}}));
  EXPECT_EQ(keep, VertexSet({1, 3}));
}

TEST(EdgeListIo, RoundTripAndFormats) {
  const auto g = cycle4();
  std::stringstream ss;
  write_edge_list(ss, g);
  EXPECT_EQ(read_edge_list(ss), g);

  std::istringstream one_based("# comment\n1 2\n2 3\n");
  EXPECT_EQ(read_edge_list(one_based, 1), make(3, {{0, 1}, {1, 2}}));

  std::istringstream with_n("n 6\n0 1\n");
  EXPECT_EQ(read_edge_list(with_n).num_vertices(), 6u);

  std::istringstream bad("0 x\n");
  EXPECT_THROW(read_edge_list(bad), InputError);
  std::istringstream small_n("n 2\n0 4\n");
  EXPECT_THROW(read_edge_list(small_n), InputError);
}
