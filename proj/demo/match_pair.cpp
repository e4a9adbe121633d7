// Copyright 2026 The dpmatch Authors
// SPDX-License-Identifier: Apache-2.0

// Samples a correlated pair of Erdos-Renyi graphs and matches them with the
// degree-profile matcher and with refinement.

#include <cstdio>

#include "dpmatch/dpmatch.hpp"

int main() {
  using namespace dpmatch;
  const Graph parent = sample_bernoulli(ErSpec{300, 0.1}, 1);
  const ChildPair pair = make_pair(parent, 0.98, 0.95, 2);

  auto rate = [&](const MatchResult& r) {
    std::size_t hit = 0;
    for (std::size_t i = 0; i < pair.truth.size(); ++i)
      hit += pair.truth[i] != kNoVertex && r.assignment[i] == pair.truth[i];
    return static_cast<double>(hit) / static_cast<double>(pair.overlap());
  };

  const MatchResult dp = dp_match(pair.a.graph, pair.b.graph);
  const MatchResult post = ee_post(pair.a.graph, pair.b.graph, 10, 50);
  std::printf("overlap %zu of %zu/%zu vertices\n", pair.overlap(), pair.a.graph.num_vertices(),
              pair.b.graph.num_vertices());
  std::printf("DP       recovery %.3f (%zu matched)\n", rate(dp), dp.matched_count());
  std::printf("EE-post  recovery %.3f (%zu converged)\n", rate(post), post.converged_count());
}
