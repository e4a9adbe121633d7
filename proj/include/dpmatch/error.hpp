// Copyright 2026 The dpmatch Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DPMATCH_ERROR_HPP_
#define DPMATCH_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace dpmatch {

/// Raised when caller-supplied data violates an operation's precondition
/// (out-of-range vertex, malformed matrix, non-bijective permutation, ...).
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised when an exhaustive routine is asked to handle an instance it
/// refuses to enumerate.
class TooLargeError : public std::length_error {
 public:
  explicit TooLargeError(const std::string& what) : std::length_error(what) {}
};

/// Raised when a numerical routine cannot deliver what was asked, e.g. fewer
/// distinct leading eigenpairs than requested communities.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dpmatch

#endif  // DPMATCH_ERROR_HPP_
