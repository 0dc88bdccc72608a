#pragma once

// Independent reference implementations, deliberately naive.
//
//  * oracle_family_maximum: enumerate every nonoverlapping interval family in
//    position order and evaluate the assigned objective from scratch each
//    time. No pruning, no incremental sums, no shared code with the engine.
//    Usable to ~12 sample points (family counts grow like a Fibonacci
//    number); templated so the exact-rational mode reuses it verbatim.
//
//  * oracle_extremal: brute grid search of the ordered constrained
//    maximization with the last coordinate solved exactly from the budget.
//    Produces feasible points only, so its maximum is a certified lower
//    bound for the closed-form optimum.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "gbv/errors.hpp"
#include "gbv/variation.hpp"

namespace gbv {

template <class T>
struct OracleFamilyResult {
  T inner{};  // best sum of osc^p / lambda before the 1/p root
  std::vector<IndexInterval> intervals;
};

/// Exhaustive family maximum over the value sequence `values` with weights
/// `lambda` (used directly, first weight = rank 1). PowFn maps an
/// oscillation to its p-th power.
template <class T, class PowFn>
OracleFamilyResult<T> oracle_family_maximum(std::span<const T> values,
                                            std::span<const T> lambda, PowFn&& pw,
                                            WrapMode wrap, int size_cap = 12) {
  const int n = static_cast<int>(values.size());
  if (n < 1) throw ArgumentError("oracle_family_maximum: empty value sequence");
  if (n > size_cap) throw CapacityError("oracle_family_maximum: too many sample points");
  if (lambda.empty()) throw ArgumentError("oracle_family_maximum: empty weight list");

  auto value_at = [&](int i) { return values[static_cast<std::size_t>(i % n)]; };
  auto osc = [&](int a, int b) {
    const T d = value_at(b) - value_at(a);
    return d < T{} ? T{} - d : d;
  };

  std::vector<IndexInterval> family;
  OracleFamilyResult<T> best;  // empty family: inner = 0

  auto evaluate = [&]() {
    std::vector<T> oscs;
    oscs.reserve(family.size());
    for (const auto& iv : family) oscs.push_back(osc(iv.a, iv.b));
    std::sort(oscs.begin(), oscs.end(), std::greater<T>());
    T inner{};
    for (std::size_t r = 0; r < oscs.size(); ++r) inner += pw(oscs[r]) / lambda[r];
    if (inner > best.inner) {
      best.inner = inner;
      best.intervals = family;
    }
  };

  // All families with intervals inside the linear cell range [lo, hi].
  auto rec = [&](auto&& self, int lo, int hi) -> void {
    if (family.size() >= lambda.size()) return;
    for (int a = lo; a < hi; ++a)
      for (int b = a + 1; b <= hi; ++b) {
        family.push_back({a, b});
        evaluate();
        self(self, b, hi);
        family.pop_back();
      }
  };

  rec(rec, 0, n);
  if (wrap == WrapMode::On) {
    // One wrapping interval (a, b) with b > n, then a linear family in the
    // leftover range [b - n, a].
    for (int a = 1; a < n; ++a)
      for (int b = n + 1; b < a + n; ++b) {
        family.push_back({a, b});
        evaluate();
        rec(rec, b - n, a);
        family.pop_back();
      }
  }
  return best;
}

struct OracleVariationResult {
  double value = 0.0;
  std::vector<IndexInterval> intervals;
};

/// Double-precision convenience wrapper applying the 1/p root.
inline OracleVariationResult oracle_lambda_p_variation(std::span<const double> values,
                                                       std::span<const double> lambda, double p,
                                                       WrapMode wrap, int size_cap = 12) {
  if (!(p >= 1.0)) throw ArgumentError("oracle_lambda_p_variation: need p >= 1");
  auto res = oracle_family_maximum<double>(
      values, lambda, [p](double o) { return std::pow(o, p); }, wrap, size_cap);
  OracleVariationResult out;
  out.value = res.inner > 0.0 ? std::pow(res.inner, 1.0 / p) : 0.0;
  out.intervals = std::move(res.intervals);
  return out;
}

namespace detail {

// Hot-path powers for the handful of exponents the brute grid search uses.
inline double fast_pow(double x, double q) {
  if (q == 1.0) return x;
  if (q == 2.0) return x * x;
  if (q == 3.0) return x * x * x;
  if (q == 0.5) return std::sqrt(x);
  if (q == 1.5) return x * std::sqrt(x);
  return std::pow(x, q);
}

}  // namespace detail

struct OracleExtremalResult {
  double value = 0.0;
  std::vector<double> x;
  std::int64_t points_evaluated = 0;
};

/// Brute maximization of sum x_i^q over x_1 >= ... >= x_n >= 0 with
/// sum x_i / lambda_i <= 1: the first n-1 coordinates sweep a pitch
/// lambda_1/density grid over the feasible ordered region, the last is
/// solved exactly from the remaining budget.
inline OracleExtremalResult oracle_extremal(std::span<const double> lambda, double q,
                                            int density) {
  const int n = static_cast<int>(lambda.size());
  if (n < 1 || n > 6) throw CapacityError("oracle_extremal: supports 1..6 coordinates");
  if (density < 2) throw ArgumentError("oracle_extremal: need density >= 2");
  if (!(q > 0.0)) throw ArgumentError("oracle_extremal: need q > 0");

  OracleExtremalResult best;
  std::vector<double> x(static_cast<std::size_t>(n), 0.0);
  const double h = lambda[0] / density;

  auto rec = [&](auto&& self, int i, double x_prev, double budget, double value) -> void {
    if (i == n - 1) {
      // solve the last coordinate: as large as order and budget allow
      const double xn = std::min(x_prev, lambda[static_cast<std::size_t>(i)] * budget);
      x[static_cast<std::size_t>(i)] = xn;
      const double total = value + (xn > 0.0 ? detail::fast_pow(xn, q) : 0.0);
      ++best.points_evaluated;
      if (total > best.value) {
        best.value = total;
        best.x = x;
      }
      return;
    }
    const double cap = std::min(x_prev, lambda[static_cast<std::size_t>(i)] * budget);
    const auto j_max = static_cast<std::int64_t>(std::floor(cap / h + 1e-12));
    for (std::int64_t j = j_max; j >= 0; --j) {
      const double xi = static_cast<double>(j) * h;
      x[static_cast<std::size_t>(i)] = xi;
      self(self, i + 1, xi, budget - xi / lambda[static_cast<std::size_t>(i)],
           value + (xi > 0.0 ? detail::fast_pow(xi, q) : 0.0));
    }
  };
  rec(rec, 0, std::numeric_limits<double>::infinity(), 1.0, 0.0);
  return best;
}

}  // namespace gbv
