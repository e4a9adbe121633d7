// Copyright 2026 The dpmatch Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "dpmatch/matchers.hpp"
#include "dpmatch/netgen.hpp"
#include "dpmatch/oracle.hpp"

using namespace dpmatch;

namespace {

Graph triangle() { return Graph::from_edges(3, std::vector<Edge>{{0, 1}, {1, 2}, {0, 2}}); }

Assignment identity_assignment(std::size_t n) {
  Assignment a(n);
  for (std::size_t i = 0; i < n; ++i) a.to_right[i] = static_cast<Vertex>(i);
  return a;
}

}  // namespace

TEST(EdgeAgreement, CountsOrderedPairs) {
  EXPECT_EQ(edge_agreement(triangle(), triangle(), identity_assignment(3)), 6);
  EXPECT_EQ(edge_agreement(triangle(), triangle(), Assignment(3)), 0);
  EXPECT_THROW(edge_agreement(triangle(), triangle(), Assignment(2)), InputError);
}

TEST(IsIsomorphism, Basics) {
  const auto path = Graph::from_edges(3, std::vector<Edge>{{0, 1}, {1, 2}});
  Assignment rev(3);
  rev.to_right = {2, 1, 0};
  EXPECT_TRUE(is_isomorphism(path, path, rev));
  Assignment bad(3);
  bad.to_right = {1, 0, 2};
  EXPECT_FALSE(is_isomorphism(path, path, bad));
  EXPECT_FALSE(is_isomorphism(path, triangle(), identity_assignment(3)));
}

TEST(Exhaustive, TriangleValueSix) {
  const auto r = exhaustive_match(triangle(), triangle());
  EXPECT_EQ(r.best_value, 6);
  EXPECT_EQ(edge_agreement(triangle(), triangle(), r.best_assignment), 6);
  // The triangle is vertex-transitive, so the identity is one of the
  // witnesses; the first maximum found under lexicographic order is it.
  EXPECT_EQ(r.best_assignment, identity_assignment(3));
}

TEST(Exhaustive, EdgeAgainstEmpty) {
  const auto r = exhaustive_match(Graph::from_edges(2, std::vector<Edge>{{0, 1}}), Graph(2));
  EXPECT_EQ(r.best_value, 0);
}

TEST(Exhaustive, RefusesLargeInstances) {
  EXPECT_THROW(exhaustive_match(Graph(9), Graph(3)), TooLargeError);
  EXPECT_THROW(exhaustive_match(Graph(3), Graph(3), 9), TooLargeError);
  EXPECT_THROW(exhaustive_match(Graph(5), Graph(3), 4), TooLargeError);
}

TEST(Exhaustive, WitnessValueAndInvariants) {
  Rng rng(31);
  for (int t = 0; t < 30; ++t) {
    const std::size_t na = 2 + rng.below(5), nb = 2 + rng.below(5);
    const auto a = sample_bernoulli(ErSpec{na, 0.5}, rng.next_u64());
    const auto b = sample_bernoulli(ErSpec{nb, 0.5}, rng.next_u64());
    const auto r = exhaustive_match(a, b);
    EXPECT_EQ(r.best_value, edge_agreement(a, b, r.best_assignment));
    EXPECT_TRUE(r.best_assignment.is_injective());
    EXPECT_EQ(exhaustive_match(a, a).best_value, static_cast<std::int64_t>(2 * a.num_edges()));
    Permutation sigma = identity_permutation(na);
    rng.shuffle(std::span<Vertex>(sigma));
    EXPECT_EQ(exhaustive_match(permute(a, sigma), b).best_value, r.best_value);
  }
}

TEST(Exhaustive, DominatesHeuristics) {
  Rng rng(8);
  for (int t = 0; t < 30; ++t) {
    const auto p = make_pair(sample_bernoulli(ErSpec{6, 0.5}, rng.next_u64()), 0.9, 0.9, rng.next_u64());
    const auto& a = p.a.graph;
    const auto& b = p.b.graph;
    const auto best = exhaustive_match(a, b).best_value;
    EXPECT_GE(best, edge_agreement(a, b, dp_match(a, b).assignment));
    EXPECT_GE(best, edge_agreement(a, b, ee_post(a, b, 2, 5).assignment));
  }
}
