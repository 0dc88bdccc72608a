#pragma once

// Sampled 1-periodic functions.
//
// GridFunction1D holds N samples at t = i/N; evaluation reduces indices mod N,
// so f(1) = f(0) exactly. GridFunctionND is the d-variable analogue on a
// row-major grid, 1-periodic along every axis. StepFunction1D is a
// right-continuous piecewise-constant function with exact rational
// breakpoints; variation engines consume its piece-value sequence, which is
// all the family objectives depend on.

#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include "gbv/errors.hpp"
#include "gbv/rational.hpp"

namespace gbv {

class GridFunction1D {
 public:
  explicit GridFunction1D(std::vector<double> samples) : samples_(std::move(samples)) {
    if (samples_.empty()) throw ConstructionError("grid function: needs at least one sample");
    for (double v : samples_)
      if (!std::isfinite(v)) throw ConstructionError("grid function: samples must be finite");
  }

  static GridFunction1D constant(double value, int n) {
    return GridFunction1D(std::vector<double>(static_cast<std::size_t>(n), value));
  }

  int n() const { return static_cast<int>(samples_.size()); }

  /// Sample at grid index i, reduced mod N (exact periodicity).
  double at(std::int64_t i) const {
    const std::int64_t n = static_cast<std::int64_t>(samples_.size());
    std::int64_t r = i % n;
    if (r < 0) r += n;
    return samples_[static_cast<std::size_t>(r)];
  }

  std::span<const double> samples() const { return samples_; }

 private:
  std::vector<double> samples_;
};

/// d-variable sample grid (1 <= d <= 3), row-major, 1-periodic per axis.
class GridFunctionND {
 public:
  GridFunctionND(std::vector<int> dims, std::vector<double> samples)
      : dims_(std::move(dims)), samples_(std::move(samples)) {
    if (dims_.empty() || dims_.size() > 3)
      throw ConstructionError("grid function: dimension must be 1..3");
    std::int64_t total = 1;
    for (int d : dims_) {
      if (d < 1) throw ConstructionError("grid function: each axis needs >= 1 samples");
      total *= d;
    }
    if (static_cast<std::int64_t>(samples_.size()) != total)
      throw ConstructionError("grid function: sample count does not match dims");
    for (double v : samples_)
      if (!std::isfinite(v)) throw ConstructionError("grid function: samples must be finite");
    strides_.assign(dims_.size(), 1);
    for (int a = static_cast<int>(dims_.size()) - 2; a >= 0; --a)
      strides_[a] = strides_[a + 1] * dims_[a + 1];
  }

  int dim() const { return static_cast<int>(dims_.size()); }
  const std::vector<int>& dims() const { return dims_; }

  double at(std::span<const std::int64_t> idx) const {
    std::int64_t flat = 0;
    for (std::size_t a = 0; a < dims_.size(); ++a) {
      std::int64_t r = idx[a] % dims_[a];
      if (r < 0) r += dims_[a];
      flat += r * strides_[a];
    }
    return samples_[static_cast<std::size_t>(flat)];
  }

  std::span<const double> samples() const { return samples_; }

  /// Number of complementary tuples for one fixed axis.
  std::int64_t complement_count(int axis) const {
    std::int64_t c = 1;
    for (std::size_t a = 0; a < dims_.size(); ++a)
      if (static_cast<int>(a) != axis) c *= dims_[a];
    return c;
  }

 private:
  std::vector<int> dims_;
  std::vector<double> samples_;
  std::vector<std::int64_t> strides_;
};

/// Right-continuous 1-periodic step function with rational breakpoints.
///
/// values[i] holds on [breakpoints[i], breakpoints[i+1]) and the last piece
/// wraps around to breakpoints[0] + 1.
class StepFunction1D {
 public:
  StepFunction1D(std::vector<Rational> breakpoints, std::vector<double> values)
      : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
    if (breakpoints_.empty() || breakpoints_.size() != values_.size())
      throw ConstructionError("step function: breakpoint/value count mismatch");
    for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
      if (breakpoints_[i] < 0 || breakpoints_[i] >= 1)
        throw ConstructionError("step function: breakpoints must lie in [0,1)");
      if (i > 0 && breakpoints_[i] <= breakpoints_[i - 1])
        throw ConstructionError("step function: breakpoints must be strictly increasing");
      if (!std::isfinite(values_[i]))
        throw ConstructionError("step function: values must be finite");
    }
  }

  std::size_t pieces() const { return values_.size(); }
  const std::vector<Rational>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& piece_values() const { return values_; }

  /// Piece values in [0,1] order. When the first breakpoint is positive, the
  /// wrapped last piece also covers [0, b_0) and leads the sequence. This is
  /// the adapter for the interval-family engines: their objectives depend
  /// only on attainable value sequences, not on piece lengths.
  std::vector<double> linear_piece_values() const {
    if (breakpoints_.front() == 0) return values_;
    std::vector<double> out;
    out.reserve(values_.size() + 1);
    out.push_back(values_.back());
    out.insert(out.end(), values_.begin(), values_.end());
    return out;
  }

  /// Exact evaluation: reduce t mod 1, then locate its piece.
  double value_at(Rational t) const {
    BigInt num = boost::multiprecision::numerator(t);
    BigInt den = boost::multiprecision::denominator(t);
    BigInt whole = num / den;
    if (t < whole) whole -= 1;  // floor for negatives
    t -= Rational(whole);
    // t in [0,1); the first piece also covers [0, breakpoints[0]) by wrap
    std::size_t lo = 0, hi = breakpoints_.size();
    if (t < breakpoints_.front()) return values_.back();
    while (lo + 1 < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (breakpoints_[mid] <= t)
        lo = mid;
      else
        hi = mid;
    }
    return values_[lo];
  }

 private:
  std::vector<Rational> breakpoints_;
  std::vector<double> values_;
};

}  // namespace gbv
