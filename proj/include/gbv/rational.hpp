#pragma once

// Exact-rational arithmetic for the verification paths: exact partial sums of
// 1/lambda_i over explicit integer weight lists, exact feasibility checks for
// extremal solutions, and exact breakpoint arithmetic for witness functions.

#include <cstdint>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "gbv/errors.hpp"

namespace gbv {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// o^p for integer p >= 0, computed exactly.
inline Rational pow_int(const Rational& o, int p) {
  if (p < 0) throw ArgumentError("pow_int: exponent must be nonnegative");
  Rational acc = 1;
  Rational base = o;
  for (int e = p; e > 0; e >>= 1) {
    if (e & 1) acc *= base;
    base *= base;
  }
  return acc;
}

/// Exact S_k = sum_{i=1..k} 1/lambda_i for an explicit positive weight list.
inline Rational exact_partial_sum(std::span<const std::int64_t> lambda, std::int64_t k) {
  if (k < 1 || static_cast<std::size_t>(k) > lambda.size())
    throw ArgumentError("exact_partial_sum: index out of range");
  Rational s = 0;
  for (std::int64_t i = 0; i < k; ++i) {
    if (lambda[i] <= 0) throw ArgumentError("exact_partial_sum: weights must be positive");
    s += Rational(1, lambda[i]);
  }
  return s;
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace gbv
