#pragma once

// Closed-form solution of the ordered constrained maximization
//
//   maximize   sum_{i=1}^n x_i^q
//   subject to x_1 >= x_2 >= ... >= x_n >= 0,  sum_i x_i / lambda_i <= 1.
//
// With S_k = sum_{i<=k} 1/lambda_i the value of the flat vertex with k
// positive coordinates (each 1/S_k) is k / S_k^q, and the optimum is attained
// at such a vertex:
//
//  * q >= 1: convexity pushes the maximum onto a vertex of the feasible
//    polytope; the best vertex is argmax_k k / S_k^q (smallest k on ties).
//  * 0 < q < 1: the candidate values are strictly increasing in k
//    (k/S_k^q grows by the factor (1+1/k)^(1-q) > 1 or more per step), so the
//    optimum uses all n coordinates.
//
// verify_vertex_optimality samples random ordered feasible points and checks
// none beats the vertex value, a cheap independent certificate.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "gbv/errors.hpp"
#include "gbv/rational.hpp"
#include "gbv/sequences.hpp"

namespace gbv {

struct ExtremalResult {
  std::int64_t n = 0;
  double q = 1.0;
  std::int64_t k_star = 0;  // number of positive coordinates in the maximizer
  double value = 0.0;       // max_k k / S_k^q
  double x_value = 0.0;     // common positive coordinate 1/S_{k*}
  std::vector<std::int64_t> optimal_k_set;  // all k within 1e-12 relative of the max
  std::vector<double> candidate_values;     // k/S_k^q for k=1..n (only when n <= 4096)
  std::vector<std::string> notes;
};

/// Value of the flat vertex with k positive coordinates: k / S_k^q.
inline double extremal_candidate_value(const LambdaSequence& lambda, double q,
                                       std::int64_t k) {
  if (k < 1) throw ArgumentError("extremal_candidate_value: need k >= 1");
  const double s = lambda.partial_sum(k);
  return static_cast<double>(k) / std::pow(s, q);
}

inline ExtremalResult solve_extremal(const LambdaSequence& lambda, double q, std::int64_t n) {
  if (n < 1) throw ArgumentError("solve_extremal: need n >= 1");
  if (!(q > 0.0) || !std::isfinite(q)) throw ArgumentError("solve_extremal: need finite q > 0");
  if (n > lambda.max_index())
    throw ArgumentError("solve_extremal: n exceeds the weight list length");

  ExtremalResult res;
  res.n = n;
  res.q = q;

  // One incremental pass: S_k and the log of k/S_k^q (safe for huge k).
  double s = 0.0;
  double best_log = -std::numeric_limits<double>::infinity();
  std::int64_t best_k = 1;
  std::vector<double> logs;
  const bool keep = n <= 4096;
  if (keep) logs.reserve(static_cast<std::size_t>(n));
  for (std::int64_t k = 1; k <= n; ++k) {
    s += 1.0 / lambda.lambda(k);
    const double lg = std::log(static_cast<double>(k)) - q * std::log(s);
    if (keep) logs.push_back(lg);
    if (lg > best_log) {
      best_log = lg;
      best_k = k;
    }
  }
  if (q < 1.0 && best_k != n) {
    // Mathematically impossible (strictly increasing candidates); if floating
    // rounding ever lands here the exact answer is still k = n.
    best_k = n;
    best_log = logs.empty() ? std::log(static_cast<double>(n)) - q * std::log(s)
                            : logs.back();
    res.notes.push_back("candidate scan disagreed with the q < 1 closed form; using k = n");
  }
  res.k_star = best_k;
  res.value = std::exp(best_log);
  res.x_value = 1.0 / lambda.partial_sum(best_k);
  if (keep) {
    for (std::int64_t k = 1; k <= n; ++k) {
      const double v = std::exp(logs[static_cast<std::size_t>(k - 1)]);
      res.candidate_values.push_back(v);
      if (v >= res.value * (1.0 - 1e-12)) res.optimal_k_set.push_back(k);
    }
  } else {
    res.optimal_k_set.push_back(best_k);
    res.notes.push_back("candidate list omitted for n > 4096");
  }
  return res;
}

/// The maximizer itself: k* copies of 1/S_{k*} padded with zeros.
inline std::vector<double> extremal_maximizer(const ExtremalResult& res,
                                              std::int64_t size_cap = 1 << 22) {
  if (res.n > size_cap) throw CapacityError("extremal_maximizer: n exceeds the size cap");
  std::vector<double> x(static_cast<std::size_t>(res.n), 0.0);
  std::fill(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(res.k_star), res.x_value);
  return x;
}

struct ExtremalExactResult {
  std::int64_t k_star = 0;
  Rational value;    // exact max_k k / S_k^q
  Rational x_value;  // exact 1/S_{k*}
};

/// Exact-rational variant for integer exponents and explicit integer weights.
inline ExtremalExactResult solve_extremal_exact(std::span<const std::int64_t> lambda, int q,
                                                std::int64_t n) {
  if (n < 1 || n > static_cast<std::int64_t>(lambda.size()))
    throw ArgumentError("solve_extremal_exact: need 1 <= n <= weight count");
  if (q < 1) throw ArgumentError("solve_extremal_exact: integer exponent must be >= 1");
  ExtremalExactResult res;
  Rational s = 0;
  for (std::int64_t k = 1; k <= n; ++k) {
    s += Rational(1, lambda[static_cast<std::size_t>(k - 1)]);
    const Rational v = Rational(k) / pow_int(s, q);
    if (res.k_star == 0 || v > res.value) {
      res.value = v;
      res.k_star = k;
      res.x_value = Rational(1) / s;
    }
  }
  return res;
}

struct VertexVerification {
  std::int64_t trials = 0;
  double vertex_value = 0.0;
  double max_sample_value = 0.0;
  double worst_violation = 0.0;  // max(0, best sample - vertex value)
  bool ok = true;
};

/// Randomized certificate: rescaled ordered samples on the constraint face
/// never beat the vertex value (within tol).
inline VertexVerification verify_vertex_optimality(const LambdaSequence& lambda, double q,
                                                   std::int64_t n, std::int64_t trials,
                                                   std::uint64_t seed, double tol = 1e-9) {
  if (trials < 1) throw ArgumentError("verify_vertex_optimality: need trials >= 1");
  const ExtremalResult opt = solve_extremal(lambda, q, n);
  if (n > (std::int64_t{1} << 22))
    throw CapacityError("verify_vertex_optimality: n too large for sampling");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(std::numeric_limits<double>::min(), 1.0);
  VertexVerification ver;
  ver.trials = trials;
  ver.vertex_value = opt.value;
  std::vector<double> u(static_cast<std::size_t>(n));
  for (std::int64_t t = 0; t < trials; ++t) {
    for (auto& ui : u) ui = unif(rng);
    std::sort(u.begin(), u.end(), std::greater<double>());
    double budget = 0.0;
    for (std::int64_t i = 0; i < n; ++i)
      budget += u[static_cast<std::size_t>(i)] / lambda.lambda(i + 1);
    const double c = 1.0 / budget;  // scale onto the constraint face
    double val = 0.0;
    for (double ui : u) val += std::pow(c * ui, q);
    if (val > ver.max_sample_value) ver.max_sample_value = val;
  }
  ver.worst_violation = std::max(0.0, ver.max_sample_value - ver.vertex_value);
  ver.ok = ver.max_sample_value <= ver.vertex_value + tol;
  return ver;
}

}  // namespace gbv
