#pragma once

// Multivariable variation functionals, one axis at a time.
//
// For a function on a d-dimensional grid the axis-j variation treats f as a
// one-variable function of coordinate j with the remaining coordinates free:
//
//  * lambda_sharp_variation_axis: each interval of the family may use its own
//    best complementary tuple, so the axis oscillation matrix
//    osc[a][b] = max over tuples |f(..b..) - f(..a..)| feeds the ordinary
//    one-variable family engine unchanged.
//
//  * bvq_variation_axis: one complementary tuple is shared by the whole
//    partition, so the per-mesh optimum is the best one-variable slice result
//    over all tuples.
//
// The total sharp variation is the sum of the axis values.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gbv/errors.hpp"
#include "gbv/grid_function.hpp"
#include "gbv/sequences.hpp"
#include "gbv/variation.hpp"

namespace gbv {

namespace detail {

// Decode a flat complementary-tuple index into full coordinates with the
// axis coordinate left at zero.
inline std::vector<std::int64_t> complement_coords(const GridFunctionND& f, int axis,
                                                   std::int64_t tuple_index) {
  std::vector<std::int64_t> coords(static_cast<std::size_t>(f.dim()), 0);
  for (int k = f.dim() - 1; k >= 0; --k) {
    if (k == axis) continue;
    const std::int64_t d = f.dims()[static_cast<std::size_t>(k)];
    coords[static_cast<std::size_t>(k)] = tuple_index % d;
    tuple_index /= d;
  }
  return coords;
}

inline std::vector<double> axis_slice(const GridFunctionND& f, int axis,
                                      std::int64_t tuple_index) {
  auto coords = complement_coords(f, axis, tuple_index);
  const std::int64_t n = f.dims()[static_cast<std::size_t>(axis)];
  std::vector<double> slice(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    coords[static_cast<std::size_t>(axis)] = i;
    slice[static_cast<std::size_t>(i)] = f.at(coords);
  }
  return slice;
}

}  // namespace detail

/// Largest axis-j oscillation over an index interval: max over complementary
/// tuples of |f(..., b, ...) - f(..., a, ...)| (periodic in the axis index).
inline double effective_oscillation(const GridFunctionND& f, int axis, int a, int b) {
  if (axis < 0 || axis >= f.dim()) throw ArgumentError("effective_oscillation: bad axis");
  const std::int64_t n = f.dims()[static_cast<std::size_t>(axis)];
  if (a >= b || b > a + n) throw ArgumentError("effective_oscillation: need a < b <= a + N");
  double best = 0.0;
  const std::int64_t tuples = f.complement_count(axis);
  for (std::int64_t t = 0; t < tuples; ++t) {
    auto coords = detail::complement_coords(f, axis, t);
    coords[static_cast<std::size_t>(axis)] = a;
    const double va = f.at(coords);
    coords[static_cast<std::size_t>(axis)] = b;
    const double o = std::abs(f.at(coords) - va);
    if (o > best) best = o;
  }
  return best;
}

/// Axis-j sharp p-Lambda-variation: the one-variable family maximization run
/// on the effective oscillation matrix (per-interval free tuples).
inline VariationResult lambda_sharp_variation_axis(const GridFunctionND& f, int axis,
                                                   const LambdaSequence& lambda, double p,
                                                   const VariationOptions& opts = {}) {
  if (axis < 0 || axis >= f.dim())
    throw ArgumentError("lambda_sharp_variation_axis: bad axis");
  const int n = static_cast<int>(f.dims()[static_cast<std::size_t>(axis)]);
  // Precompute the matrix: the engines probe (a, b) pairs repeatedly.
  const int span = opts.wrap == WrapMode::On ? n : n + 1;
  std::vector<double> mat(static_cast<std::size_t>(n) * static_cast<std::size_t>(span + 1),
                          0.0);
  for (int a = 0; a < n; ++a) {
    const int b_max = opts.wrap == WrapMode::On ? a + n : n;
    for (int b = a + 1; b <= b_max; ++b)
      mat[static_cast<std::size_t>(a) * (span + 1) + (b - a)] =
          effective_oscillation(f, axis, a, b);
  }
  auto osc = [&mat, n, span](int a, int b) {
    const int aa = a % n;
    return mat[static_cast<std::size_t>(aa) * (span + 1) + (b - a)];
  };
  return maximize_interval_families(n, osc, lambda, p, opts);
}

struct MultiVariationResult {
  double total = 0.0;
  std::vector<VariationResult> per_axis;
};

/// Sharp p-Lambda-variation of a multivariable grid function: the sum over
/// axes of the axis variations (one weight sequence shared by every axis).
inline MultiVariationResult lambda_sharp_variation(const GridFunctionND& f,
                                                   const LambdaSequence& lambda, double p,
                                                   const VariationOptions& opts = {}) {
  MultiVariationResult res;
  for (int axis = 0; axis < f.dim(); ++axis) {
    res.per_axis.push_back(lambda_sharp_variation_axis(f, axis, lambda, p, opts));
    res.total += res.per_axis.back().value;
  }
  return res;
}

struct BvqAxisRow {
  int n = 0;
  double q_n = 1.0;
  double mesh = 0.0;
  bool clamped = false;
  double value = 0.0;
  std::int64_t best_tuple = 0;  // complementary tuple attaining the per-n value
};

struct BvqAxisResult {
  double value = 0.0;
  int best_n = 0;
  std::int64_t best_tuple = 0;
  IntervalFamily witness;
  std::vector<BvqAxisRow> table;
  std::vector<std::string> notes;
};

/// Axis-j partition variation with a shared complementary tuple: per n the
/// best one-variable partition value over all tuples of the axis slices.
inline BvqAxisResult bvq_variation_axis(const GridFunctionND& f, int axis, const QSequence& q,
                                        int n_max, const BvqOptions& opts = {}) {
  if (axis < 0 || axis >= f.dim()) throw ArgumentError("bvq_variation_axis: bad axis");
  const std::int64_t tuples = f.complement_count(axis);
  const std::int64_t n_pts = f.dims()[static_cast<std::size_t>(axis)];
  const double cost = static_cast<double>(tuples) * static_cast<double>(n_pts) *
                      static_cast<double>(n_pts) * static_cast<double>(n_pts) *
                      static_cast<double>(n_max);
  if (n_pts > opts.size_cap || cost > 4e9)
    throw CapacityError("bvq_variation_axis: grid too large for the shared-tuple search");

  BvqAxisResult res;
  std::vector<BvqResult> per_tuple;
  per_tuple.reserve(static_cast<std::size_t>(tuples));
  for (std::int64_t t = 0; t < tuples; ++t)
    per_tuple.push_back(
        bvq_variation(GridFunction1D(detail::axis_slice(f, axis, t)), q, n_max, opts));

  for (int n = 1; n <= n_max; ++n) {
    BvqAxisRow row;
    const auto& base = per_tuple.front().table[static_cast<std::size_t>(n - 1)];
    row.n = base.n;
    row.q_n = base.q_n;
    row.mesh = base.mesh;
    row.clamped = base.clamped;
    row.value = base.value;
    row.best_tuple = 0;
    for (std::int64_t t = 1; t < tuples; ++t) {
      const double v = per_tuple[static_cast<std::size_t>(t)]
                           .table[static_cast<std::size_t>(n - 1)]
                           .value;
      if (v > row.value) {
        row.value = v;
        row.best_tuple = t;
      }
    }
    res.table.push_back(row);
  }
  res.best_n = 1;
  for (const auto& row : res.table)
    if (row.value > res.value) {
      res.value = row.value;
      res.best_n = row.n;
      res.best_tuple = row.best_tuple;
    }
  if (res.value > 0.0) {
    // Witness: rerun the single winning (tuple, n) dynamic program.
    const auto slice = detail::axis_slice(f, axis, res.best_tuple);
    const int nn = static_cast<int>(slice.size());
    int gap = 1;
    if (res.best_n < 62 && (std::int64_t{1} << res.best_n) < nn)
      gap = static_cast<int>((nn + (std::int64_t{1} << res.best_n) - 1) >> res.best_n);
    auto opt = detail::best_partition_sum(slice, gap, q.q(res.best_n), opts.wrap);
    for (std::size_t i = 0; i + 1 < opt.breaks.size(); ++i) {
      IndexInterval iv{opt.breaks[i], opt.breaks[i + 1]};
      res.witness.intervals.push_back(iv);
      res.witness.oscillations.push_back(
          std::abs(slice[static_cast<std::size_t>(iv.b % nn)] -
                   slice[static_cast<std::size_t>(iv.a % nn)]));
    }
  }
  res.notes = per_tuple.front().notes;
  return res;
}

struct MultiBvqResult {
  double total_max = 0.0;  // largest axis value
  std::vector<BvqAxisResult> per_axis;
};

/// Axis-by-axis partition variation of a multivariable grid function.
inline MultiBvqResult bvq_variation_all_axes(const GridFunctionND& f, const QSequence& q,
                                             int n_max, const BvqOptions& opts = {}) {
  MultiBvqResult res;
  for (int axis = 0; axis < f.dim(); ++axis) {
    res.per_axis.push_back(bvq_variation_axis(f, axis, q, n_max, opts));
    if (res.per_axis.back().value > res.total_max) res.total_max = res.per_axis.back().value;
  }
  return res;
}

}  // namespace gbv
