#pragma once

// Weight sequences Lambda = (lambda_i) and exponent sequences q(n).
//
// A Lambda sequence is positive and nondecreasing; the classes it defines are
// nontrivial exactly when sum 1/lambda_i diverges (Waterman condition). The
// partial sums S_k = sum_{i<=k} 1/lambda_i drive everything downstream:
// variation objectives, extremal candidate values k/S_k^q, the inclusion
// criterion M(n), and the witness construction.
//
// An exponent sequence q(n) is nondecreasing with q(n) >= 1 and a declared
// limit that is either a finite value or an explicit "unbounded" tag.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "gbv/errors.hpp"

namespace gbv {

enum class ReciprocalSumTail { Divergent, Convergent, Undetermined };

enum class LambdaKind { Explicit, Power, Affine };

namespace detail {

// psi(x) for x > 0 via the asymptotic series, lifting small arguments with
// psi(x) = psi(x+1) - 1/x. Accurate to ~1e-14 for the ranges used here.
inline double digamma(double x) {
  double acc = 0.0;
  while (x < 16.0) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  // ln x - 1/(2x) - 1/(12x^2) + 1/(120x^4) - 1/(252x^6)
  return acc + std::log(x) - 0.5 * inv -
         inv2 * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 / 252.0));
}

inline constexpr double kEulerGamma = 0.57721566490153286;

}  // namespace detail

/// Nondecreasing positive weight sequence with cached reciprocal partial sums.
///
/// Families: an explicit finite list, the power family lambda_i = i^alpha
/// (alpha >= 0), and the affine family lambda_i = a*i + b (a >= 0). Symbolic
/// families evaluate S_k in closed form past the cache horizon, so witness
/// searches can probe very large indices.
class LambdaSequence {
 public:
  static LambdaSequence explicit_list(std::vector<double> values) {
    if (values.empty()) throw ConstructionError("lambda: explicit list must be nonempty");
    double prev = 0.0;
    for (double v : values) {
      if (!std::isfinite(v) || v <= 0.0)
        throw ConstructionError("lambda: weights must be finite and positive");
      if (v < prev) throw ConstructionError("lambda: weights must be nondecreasing");
      prev = v;
    }
    LambdaSequence s;
    s.kind_ = LambdaKind::Explicit;
    s.values_ = std::move(values);
    return s;
  }

  /// lambda_i = i^alpha. Divergent reciprocal sum iff alpha <= 1.
  static LambdaSequence power(double alpha) {
    if (!std::isfinite(alpha) || alpha < 0.0)
      throw ConstructionError("lambda: power family needs alpha >= 0");
    LambdaSequence s;
    s.kind_ = LambdaKind::Power;
    s.alpha_ = alpha;
    return s;
  }

  /// lambda_i = a*i + b. Requires a >= 0 and a + b > 0.
  static LambdaSequence affine(double a, double b) {
    if (!std::isfinite(a) || !std::isfinite(b) || a < 0.0 || a + b <= 0.0)
      throw ConstructionError("lambda: affine family needs a >= 0 and a + b > 0");
    LambdaSequence s;
    s.kind_ = LambdaKind::Affine;
    s.affine_a_ = a;
    s.affine_b_ = b;
    return s;
  }

  LambdaKind kind() const { return kind_; }
  double alpha() const { return alpha_; }
  double affine_a() const { return affine_a_; }
  double affine_b() const { return affine_b_; }
  const std::vector<double>& explicit_values() const { return values_; }

  /// Largest defined index (INT64_MAX for symbolic families).
  std::int64_t max_index() const {
    return kind_ == LambdaKind::Explicit ? static_cast<std::int64_t>(values_.size())
                                         : std::numeric_limits<std::int64_t>::max();
  }

  double lambda(std::int64_t i) const {
    if (i < 1 || i > max_index()) throw ArgumentError("lambda: index out of range");
    switch (kind_) {
      case LambdaKind::Explicit:
        return values_[static_cast<std::size_t>(i - 1)];
      case LambdaKind::Power:
        return std::pow(static_cast<double>(i), alpha_);
      case LambdaKind::Affine:
        return affine_a_ * static_cast<double>(i) + affine_b_;
    }
    return 0.0;  // unreachable
  }

  /// S_k = sum_{i=1..k} 1/lambda_i. Cached up to the cache horizon; symbolic
  /// families switch to closed-form tails beyond it.
  double partial_sum(std::int64_t k) const {
    if (k < 1 || k > max_index()) throw ArgumentError("partial_sum: index out of range");
    if (k <= kCacheHorizon) {
      std::lock_guard<std::mutex> lock(cache_mutex_);
      ensure_cached(k);
      return cache_[static_cast<std::size_t>(k - 1)];
    }
    return tail_sum(k);
  }

  /// Copy of (S_1, ..., S_k); bulk access for scans.
  std::vector<double> partial_sums_up_to(std::int64_t k) const {
    if (k < 1 || k > max_index()) throw ArgumentError("partial_sums_up_to: index out of range");
    if (k > kCacheHorizon)
      throw CapacityError("partial_sums_up_to: request exceeds the cache horizon (2^22)");
    std::lock_guard<std::mutex> lock(cache_mutex_);
    ensure_cached(k);
    return std::vector<double>(cache_.begin(), cache_.begin() + static_cast<std::size_t>(k));
  }

  ReciprocalSumTail reciprocal_sum_tail() const {
    switch (kind_) {
      case LambdaKind::Explicit:
        return ReciprocalSumTail::Undetermined;
      case LambdaKind::Power:
        return alpha_ <= 1.0 ? ReciprocalSumTail::Divergent : ReciprocalSumTail::Convergent;
      case LambdaKind::Affine:
        return ReciprocalSumTail::Divergent;  // a >= 0, so 1/(a*i+b) ~ 1/(a*i) or constant
    }
    return ReciprocalSumTail::Undetermined;
  }

  /// Smallest k with S_k > bound, if one exists below the index cap. The
  /// divergence witness: for divergent families this terminates for every
  /// bound.
  std::optional<std::int64_t> first_index_exceeding(double bound,
                                                    std::int64_t cap = (std::int64_t{1} << 50)) const {
    cap = std::min(cap, max_index());
    if (partial_sum(std::min<std::int64_t>(1, cap)) > bound) return 1;
    std::int64_t lo = 1, hi = 1;
    while (hi < cap && partial_sum(hi) <= bound) {
      lo = hi;
      hi = hi <= cap / 2 ? hi * 2 : cap;
      if (hi == lo) break;
    }
    if (partial_sum(hi) <= bound) return std::nullopt;
    while (lo + 1 < hi) {
      const std::int64_t mid = lo + (hi - lo) / 2;
      (partial_sum(mid) <= bound ? lo : hi) = mid;
    }
    return hi;
  }

  std::string describe() const {
    switch (kind_) {
      case LambdaKind::Explicit:
        return "explicit[" + std::to_string(values_.size()) + "]";
      case LambdaKind::Power:
        return "power(alpha=" + std::to_string(alpha_) + ")";
      case LambdaKind::Affine:
        return "affine(a=" + std::to_string(affine_a_) + ", b=" + std::to_string(affine_b_) + ")";
    }
    return "?";
  }

  static constexpr std::int64_t kCacheHorizon = std::int64_t{1} << 22;

 private:
  LambdaSequence() = default;

  void ensure_cached(std::int64_t k) const {
    const std::size_t need = static_cast<std::size_t>(k);
    if (cache_.size() >= need) return;
    cache_.reserve(std::max<std::size_t>(need, std::min<std::size_t>(
                                                   static_cast<std::size_t>(kCacheHorizon),
                                                   cache_.empty() ? 1024 : cache_.size() * 2)));
    double s = cache_.empty() ? 0.0 : cache_.back();
    for (std::int64_t i = static_cast<std::int64_t>(cache_.size()) + 1; i <= k; ++i) {
      s += 1.0 / lambda(i);
      cache_.push_back(s);
    }
  }

  // Closed-form S_k for symbolic families at k beyond the cache horizon.
  // Power, alpha = 1: S_k = ln k + gamma + 1/(2k) - 1/(12k^2) + 1/(120k^4).
  // Power, alpha != 1: Euler-Maclaurin,
  //   S_k = zeta(alpha) + k^(1-alpha)/(1-alpha) + k^-alpha/2 - alpha*k^(-alpha-1)/12.
  // Affine: S_k = (psi(k + 1 + b/a) - psi(1 + b/a)) / a.
  // Error terms are far below double resolution at k > 2^22.
  double tail_sum(std::int64_t k) const {
    const double kd = static_cast<double>(k);
    switch (kind_) {
      case LambdaKind::Explicit:
        throw CapacityError("partial_sum: explicit list has no tail past its length");
      case LambdaKind::Power: {
        const double a = alpha_;
        if (a == 0.0) return kd;
        if (a == 1.0) {
          const double inv = 1.0 / kd;
          return std::log(kd) + detail::kEulerGamma +
                 0.5 * inv - inv * inv / 12.0 + inv * inv * inv * inv / 120.0;
        }
        return std::riemann_zeta(a) + std::pow(kd, 1.0 - a) / (1.0 - a) +
               0.5 * std::pow(kd, -a) - a * std::pow(kd, -a - 1.0) / 12.0;
      }
      case LambdaKind::Affine: {
        if (affine_a_ == 0.0) return kd / affine_b_;
        const double r = affine_b_ / affine_a_;
        return (detail::digamma(kd + 1.0 + r) - detail::digamma(1.0 + r)) / affine_a_;
      }
    }
    return 0.0;  // unreachable
  }

  LambdaKind kind_ = LambdaKind::Explicit;
  std::vector<double> values_;
  double alpha_ = 0.0;
  double affine_a_ = 0.0;
  double affine_b_ = 0.0;

  mutable std::mutex cache_mutex_;
  mutable std::vector<double> cache_;

 public:
  LambdaSequence(const LambdaSequence& o)
      : kind_(o.kind_), values_(o.values_), alpha_(o.alpha_),
        affine_a_(o.affine_a_), affine_b_(o.affine_b_) {
    std::lock_guard<std::mutex> lock(o.cache_mutex_);
    cache_ = o.cache_;
  }
  LambdaSequence& operator=(const LambdaSequence& o) {
    if (this != &o) {
      LambdaSequence tmp(o);
      kind_ = tmp.kind_;
      values_ = std::move(tmp.values_);
      alpha_ = tmp.alpha_;
      affine_a_ = tmp.affine_a_;
      affine_b_ = tmp.affine_b_;
      cache_ = std::move(tmp.cache_);
    }
    return *this;
  }
  LambdaSequence(LambdaSequence&&) = default;
  LambdaSequence& operator=(LambdaSequence&&) = default;
};

enum class QKind { Constant, Explicit, LogLog, Linear };

/// Nondecreasing exponent sequence q(n) >= 1 with a declared limit.
///
/// The limit is either a finite value or "unbounded" (empty optional); the
/// unbounded case is an explicit tag, never a sentinel number.
class QSequence {
 public:
  static QSequence constant(double q) {
    check_value(q);
    QSequence s;
    s.kind_ = QKind::Constant;
    s.const_q_ = q;
    s.limit_ = q;
    return s;
  }

  /// Explicit prefix; continues with its last value past the list. The
  /// declared limit defaults to the last value.
  static QSequence explicit_list(std::vector<double> values) {
    const double last = check_explicit(values);
    return make_explicit(std::move(values), last);
  }

  /// Explicit prefix with a declared finite limit (>= every listed value).
  static QSequence explicit_list(std::vector<double> values, double limit) {
    const double last = check_explicit(values);
    if (limit < last) throw ConstructionError("q: declared limit below a listed exponent");
    return make_explicit(std::move(values), limit);
  }

  /// Explicit prefix declared as a sample of an unbounded sequence.
  /// Evaluation past the list clamps to the last value; the unbounded
  /// declaration only affects which inclusion regime is reported.
  static QSequence explicit_list_unbounded(std::vector<double> values) {
    check_explicit(values);
    return make_explicit(std::move(values), std::nullopt);
  }

  /// q(n) = max(1, c*log2(log2(n + n0))). Unbounded for c > 0.
  static QSequence loglog(double c, double n0) {
    if (!std::isfinite(c) || c < 0.0) throw ConstructionError("q: loglog family needs c >= 0");
    if (!std::isfinite(n0) || n0 < 0.0) throw ConstructionError("q: loglog family needs n0 >= 0");
    QSequence s;
    s.kind_ = QKind::LogLog;
    s.loglog_c_ = c;
    s.loglog_n0_ = n0;
    s.limit_ = c > 0.0 ? std::nullopt : std::optional<double>(1.0);
    return s;
  }

  /// q(n) = min(cap, a*n + b); no cap means unbounded when a > 0.
  static QSequence linear(double a, double b, std::optional<double> cap = std::nullopt) {
    if (!std::isfinite(a) || a < 0.0) throw ConstructionError("q: linear family needs a >= 0");
    if (!std::isfinite(b)) throw ConstructionError("q: linear family needs finite b");
    if (a + b < 1.0) throw ConstructionError("q: linear family needs q(1) = a + b >= 1");
    if (cap) check_value(*cap);
    QSequence s;
    s.kind_ = QKind::Linear;
    s.linear_a_ = a;
    s.linear_b_ = b;
    if (cap)
      s.limit_ = cap;
    else
      s.limit_ = a > 0.0 ? std::nullopt : std::optional<double>(b);
    return s;
  }

  QKind kind() const { return kind_; }

  double q(std::int64_t n) const {
    if (n < 1) throw ArgumentError("q: index must be >= 1");
    switch (kind_) {
      case QKind::Constant:
        return const_q_;
      case QKind::Explicit: {
        const std::size_t idx = std::min<std::size_t>(static_cast<std::size_t>(n) - 1,
                                                      values_.size() - 1);
        return values_[idx];
      }
      case QKind::LogLog: {
        const double inner = std::log2(static_cast<double>(n) + loglog_n0_);
        if (inner <= 0.0) return 1.0;
        return std::max(1.0, loglog_c_ * std::log2(inner));
      }
      case QKind::Linear: {
        const double v = linear_a_ * static_cast<double>(n) + linear_b_;
        return limit_ ? std::min(*limit_, v) : v;
      }
    }
    return 1.0;  // unreachable
  }

  /// Declared limit; empty optional means unbounded (q(n) increases to
  /// infinity).
  std::optional<double> limit() const { return limit_; }
  bool unbounded() const { return !limit_.has_value(); }

  std::string describe() const {
    switch (kind_) {
      case QKind::Constant:
        return "constant(q=" + std::to_string(const_q_) + ")";
      case QKind::Explicit:
        return "explicit[" + std::to_string(values_.size()) + "]";
      case QKind::LogLog:
        return "loglog(c=" + std::to_string(loglog_c_) + ", n0=" + std::to_string(loglog_n0_) + ")";
      case QKind::Linear:
        return "linear(a=" + std::to_string(linear_a_) + ", b=" + std::to_string(linear_b_) +
               (limit_ ? ", cap=" + std::to_string(*limit_) : "") + ")";
    }
    return "?";
  }

 private:
  static void check_value(double q) {
    if (!std::isfinite(q) || q < 1.0)
      throw ConstructionError("q: exponents must be finite and >= 1");
  }

  static double check_explicit(const std::vector<double>& values) {
    if (values.empty()) throw ConstructionError("q: explicit list must be nonempty");
    double prev = 1.0;
    for (double v : values) {
      check_value(v);
      if (v < prev) throw ConstructionError("q: exponents must be nondecreasing");
      prev = v;
    }
    return values.back();
  }

  static QSequence make_explicit(std::vector<double> values, std::optional<double> limit) {
    QSequence s;
    s.kind_ = QKind::Explicit;
    s.limit_ = limit;
    s.values_ = std::move(values);
    return s;
  }

  QSequence() = default;

  QKind kind_ = QKind::Constant;
  double const_q_ = 1.0;
  std::vector<double> values_;
  double loglog_c_ = 0.0;
  double loglog_n0_ = 0.0;
  double linear_a_ = 0.0;
  double linear_b_ = 1.0;
  std::optional<double> limit_;
};

enum class IssueSeverity { Violation, Warning };

struct ValidationIssue {
  IssueSeverity severity;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;

  bool valid() const {
    return std::none_of(issues.begin(), issues.end(), [](const ValidationIssue& i) {
      return i.severity == IssueSeverity::Violation;
    });
  }
  bool has_warnings() const {
    return std::any_of(issues.begin(), issues.end(), [](const ValidationIssue& i) {
      return i.severity == IssueSeverity::Warning;
    });
  }
};

/// Machine-checkable pairing report: weight positivity/monotonicity, the
/// Waterman divergence condition (warning when the reciprocal sum converges),
/// exponent monotonicity and limit consistency over a scan horizon.
inline ValidationReport validate_sequences(const LambdaSequence& lambda, const QSequence& q,
                                           std::int64_t horizon = 64) {
  ValidationReport report;
  const std::int64_t lam_scan = std::min<std::int64_t>(horizon, lambda.max_index());
  double prev = 0.0;
  for (std::int64_t i = 1; i <= lam_scan; ++i) {
    const double v = lambda.lambda(i);
    if (!(v > 0.0)) {
      report.issues.push_back({IssueSeverity::Violation, "lambda_" + std::to_string(i) + " is not positive"});
      break;
    }
    if (v + 1e-15 * std::abs(v) < prev) {
      report.issues.push_back({IssueSeverity::Violation, "lambda sequence decreases at index " + std::to_string(i)});
      break;
    }
    prev = v;
  }
  if (lambda.reciprocal_sum_tail() == ReciprocalSumTail::Convergent)
    report.issues.push_back(
        {IssueSeverity::Warning,
         "sum of 1/lambda_i converges; the weighted-variation class degenerates "
         "to the bounded-oscillation case (Waterman condition fails)"});

  double prev_q = 1.0;
  const std::optional<double> lim = q.limit();
  for (std::int64_t n = 1; n <= horizon; ++n) {
    const double qn = q.q(n);
    if (qn < 1.0) {
      report.issues.push_back({IssueSeverity::Violation, "q(" + std::to_string(n) + ") < 1"});
      break;
    }
    if (qn + 1e-12 < prev_q) {
      report.issues.push_back({IssueSeverity::Violation, "q decreases at n = " + std::to_string(n)});
      break;
    }
    if (lim && qn > *lim + 1e-12) {
      report.issues.push_back(
          {IssueSeverity::Violation, "q(" + std::to_string(n) + ") exceeds the declared limit"});
      break;
    }
    prev_q = qn;
  }
  return report;
}

}  // namespace gbv
