// Copyright 2026 The dpmatch Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DPMATCH_BENCH_METRICS_HPP_
#define DPMATCH_BENCH_METRICS_HPP_

#include <optional>
#include <vector>

#include "dpmatch/error.hpp"
#include "dpmatch/graph.hpp"
#include "dpmatch/matchers.hpp"

namespace dpmatch::bench {

enum class RateMode {
  kAll,        // correct pairs / overlapping vertices
  kMatched,    // correct pairs / matched pairs
  kConverged,  // correct flagged pairs / flagged pairs
};

/// Recovery of a one-to-one result against a truth map (a-vertex -> b-vertex,
/// kNoVertex outside the overlap). An empty denominator yields nullopt.
inline std::optional<double> recovery_rate(const MatchResult& r, std::span<const Vertex> truth,
                                           RateMode mode) {
  if (r.assignment.n_left() != truth.size())
    throw InputError("recovery_rate: result and truth sizes differ");
  std::size_t num = 0, den = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const bool correct = truth[i] != kNoVertex && r.assignment[i] == truth[i];
    switch (mode) {
      case RateMode::kAll:
        den += truth[i] != kNoVertex;
        num += correct;
        break;
      case RateMode::kMatched:
        den += r.assignment.assigned(i);
        num += correct;
        break;
      case RateMode::kConverged: {
        const bool flagged = i < r.flags.size() && r.flags[i] != 0 && r.assignment.assigned(i);
        den += flagged;
        num += flagged && correct;
        break;
      }
    }
  }
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

/// Candidate containment: the fraction of overlapping a-vertices whose true
/// partner is among their candidates.
inline std::optional<double> recovery_rate(const CandidateMatrix& c, std::span<const Vertex> truth) {
  if (c.n_a() != truth.size()) throw InputError("recovery_rate: candidates and truth sizes differ");
  std::size_t num = 0, den = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (truth[i] == kNoVertex) continue;
    ++den;
    num += c.contains(static_cast<Vertex>(i), truth[i]);
  }
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

/// The truth map seen from the other graph.
inline std::vector<Vertex> invert_truth(std::span<const Vertex> truth, std::size_t n_b) {
  std::vector<Vertex> inv(n_b, kNoVertex);
  for (std::size_t i = 0; i < truth.size(); ++i)
    if (truth[i] != kNoVertex) inv[truth[i]] = static_cast<Vertex>(i);
  return inv;
}

}  // namespace dpmatch::bench

#endif  // DPMATCH_BENCH_METRICS_HPP_
