#pragma once

// Inclusion criterion between the sharp p-Lambda-variation class and the
// mesh-indexed partition-variation class.
//
// The decisive quantity per mesh level n is
//
//   M(n) = max_{1 <= k <= K(n)}  k^(1/q(n)) / S_k^(1/p),   S_k = sum_{i<=k} 1/lambda_i,
//
// where K(n) counts the admissible partition sizes at mesh 2^-n: a period-1
// partition with interval length >= 2^-n has at most 2^n intervals, so the
// faithful range is K(n) = 2^n (KRange::UpTo2PowN); K(n) = n is the cheaper
// variant usable at large n. Inclusion holds exactly when sup_n M(n) is
// finite; criterion_scan reports the running maximum and a growth verdict
// over a finite horizon.
//
// sufficiency_bound is the quantitative direction: for any f,
//   per-mesh value at level n  <=  V * ( max_{k <= K(n)} k / S_k^(q(n)/p) )^(1/q(n)),
// with V the sharp p-Lambda-variation of f (wraparound intervals allowed,
// since partitions contain one).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "gbv/errors.hpp"
#include "gbv/sequences.hpp"

namespace gbv {

enum class KRange { UpToN, UpTo2PowN };

struct CriterionOptions {
  KRange k_range = KRange::UpTo2PowN;
  std::int64_t k_cap = std::int64_t{1} << 22;
};

namespace detail {

inline std::int64_t criterion_k_limit(const LambdaSequence& lambda, int n, KRange range,
                                      std::int64_t k_cap) {
  std::int64_t k = 0;
  if (range == KRange::UpToN) {
    k = n;
  } else {
    if (n >= 62 || (std::int64_t{1} << n) > k_cap)
      throw CapacityError(
          "criterion: k range 2^n exceeds the cap at n=" + std::to_string(n) +
          "; rerun with the k range capped at n (upto_n) or raise k_cap");
    k = std::int64_t{1} << n;
  }
  if (k > k_cap)
    throw CapacityError("criterion: k range exceeds the cap at n=" + std::to_string(n));
  return std::min(k, lambda.max_index());
}

// argmax over 1 <= k <= K of alpha*ln(k) - beta*ln(S_k), with S accumulated
// on the fly; returns {argmax, max log value}.
struct LogRatioMax {
  std::int64_t k = 1;
  double log_value = 0.0;
};

inline LogRatioMax argmax_log_ratio(const LambdaSequence& lambda, std::int64_t k_max,
                                    double alpha, double beta) {
  LogRatioMax best;
  best.log_value = -std::numeric_limits<double>::infinity();
  double s = 0.0;
  for (std::int64_t k = 1; k <= k_max; ++k) {
    s += 1.0 / lambda.lambda(k);
    const double lg = alpha * std::log(static_cast<double>(k)) - beta * std::log(s);
    if (lg > best.log_value) {
      best.log_value = lg;
      best.k = k;
    }
  }
  return best;
}

}  // namespace detail

struct CriterionValue {
  int n = 0;
  double q_n = 1.0;
  double m = 0.0;           // M(n)
  std::int64_t argmax_k = 0;
  std::int64_t k_limit = 0;
};

/// M(n) for a single mesh level.
inline CriterionValue criterion_value(const LambdaSequence& lambda, const QSequence& q,
                                      double p, int n, const CriterionOptions& opts = {}) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw ArgumentError("criterion: need finite p >= 1");
  if (n < 1) throw ArgumentError("criterion: need n >= 1");
  CriterionValue out;
  out.n = n;
  out.q_n = q.q(n);
  out.k_limit = detail::criterion_k_limit(lambda, n, opts.k_range, opts.k_cap);
  const auto best = detail::argmax_log_ratio(lambda, out.k_limit, 1.0 / out.q_n, 1.0 / p);
  out.argmax_k = best.k;
  out.m = std::exp(best.log_value);
  return out;
}

enum class GrowthVerdict { Growing, BoundedOnHorizon, Inconclusive };

inline std::string to_string(GrowthVerdict v) {
  switch (v) {
    case GrowthVerdict::Growing: return "growing";
    case GrowthVerdict::BoundedOnHorizon: return "bounded-on-horizon";
    default: return "inconclusive";
  }
}

struct CriterionRow {
  int n = 0;
  double q_n = 1.0;
  double m = 0.0;
  std::int64_t argmax_k = 0;
  double running_max = 0.0;
};

struct ScanOptions {
  KRange k_range = KRange::UpTo2PowN;
  std::int64_t k_cap = std::int64_t{1} << 22;
  double growth_factor = 2.0;  // running-max ratio declaring growth
};

struct CriterionScan {
  std::vector<CriterionRow> rows;
  GrowthVerdict verdict = GrowthVerdict::Inconclusive;
  double running_max_end = 0.0;   // R(n_max)
  double running_max_ref = 0.0;   // R(floor(3 n_max / 4))
  int n_ref = 0;
  double growth_factor = 2.0;
};

/// M(n) for n = 1..n_max with running maxima R(n) and the horizon verdict:
/// growing when R(n_max) > factor * R(floor(3 n_max/4)), bounded-on-horizon
/// when the two running maxima coincide, inconclusive otherwise.
inline CriterionScan criterion_scan(const LambdaSequence& lambda, const QSequence& q, double p,
                                    int n_max, const ScanOptions& opts = {}) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw ArgumentError("criterion: need finite p >= 1");
  if (n_max < 1) throw ArgumentError("criterion: need n_max >= 1");

  // Cost guard, then one shared log table up to the largest k used.
  std::int64_t k_global = 0;
  double total = 0.0;
  for (int n = 1; n <= n_max; ++n) {
    const std::int64_t k =
        detail::criterion_k_limit(lambda, n, opts.k_range, opts.k_cap);
    k_global = std::max(k_global, k);
    total += static_cast<double>(k);
  }
  if (total > 4e8)
    throw CapacityError("criterion_scan: the combined k scans exceed the cost cap; "
                        "reduce n_max or use the k range capped at n");

  std::vector<double> log_k(static_cast<std::size_t>(k_global));
  std::vector<double> log_s(static_cast<std::size_t>(k_global));
  double s = 0.0;
  for (std::int64_t k = 1; k <= k_global; ++k) {
    s += 1.0 / lambda.lambda(k);
    log_k[static_cast<std::size_t>(k - 1)] = std::log(static_cast<double>(k));
    log_s[static_cast<std::size_t>(k - 1)] = std::log(s);
  }

  CriterionScan scan;
  scan.growth_factor = opts.growth_factor;
  const double inv_p = 1.0 / p;
  double running = 0.0;
  for (int n = 1; n <= n_max; ++n) {
    const std::int64_t k_limit =
        detail::criterion_k_limit(lambda, n, opts.k_range, opts.k_cap);
    const double inv_q = 1.0 / q.q(n);
    double best = -std::numeric_limits<double>::infinity();
    std::int64_t best_k = 1;
    for (std::int64_t k = 1; k <= k_limit; ++k) {
      const double lg = inv_q * log_k[static_cast<std::size_t>(k - 1)] -
                        inv_p * log_s[static_cast<std::size_t>(k - 1)];
      if (lg > best) {
        best = lg;
        best_k = k;
      }
    }
    CriterionRow row;
    row.n = n;
    row.q_n = q.q(n);
    row.m = std::exp(best);
    row.argmax_k = best_k;
    running = std::max(running, row.m);
    row.running_max = running;
    scan.rows.push_back(row);
  }

  scan.n_ref = std::max(1, (3 * n_max) / 4);
  scan.running_max_end = scan.rows.back().running_max;
  scan.running_max_ref = scan.rows[static_cast<std::size_t>(scan.n_ref - 1)].running_max;
  if (scan.running_max_end > opts.growth_factor * scan.running_max_ref)
    scan.verdict = GrowthVerdict::Growing;
  else if (scan.running_max_end <= scan.running_max_ref * (1.0 + 1e-12))
    scan.verdict = GrowthVerdict::BoundedOnHorizon;
  else
    scan.verdict = GrowthVerdict::Inconclusive;
  return scan;
}

struct SufficiencyBound {
  int n = 0;
  double q_n = 1.0;
  double variation = 0.0;   // the supplied sharp-variation value V
  double m_term = 0.0;      // max_k k / S_k^(q(n)/p)
  std::int64_t argmax_k = 0;
  double bound = 0.0;       // V * m_term^(1/q(n))
};

/// Upper bound for the per-mesh partition value at level n of any function
/// whose sharp p-Lambda-variation (wraparound allowed) is at most V.
inline SufficiencyBound sufficiency_bound(double variation, const LambdaSequence& lambda,
                                          const QSequence& q, double p, int n,
                                          const CriterionOptions& opts = {}) {
  if (!(p >= 1.0) || !std::isfinite(p))
    throw ArgumentError("sufficiency_bound: need finite p >= 1");
  if (!(variation >= 0.0)) throw ArgumentError("sufficiency_bound: need V >= 0");
  if (n < 1) throw ArgumentError("sufficiency_bound: need n >= 1");
  SufficiencyBound out;
  out.n = n;
  out.q_n = q.q(n);
  out.variation = variation;
  const std::int64_t k_limit = detail::criterion_k_limit(lambda, n, opts.k_range, opts.k_cap);
  const auto best = detail::argmax_log_ratio(lambda, k_limit, 1.0, out.q_n / p);
  out.argmax_k = best.k;
  out.m_term = std::exp(best.log_value);
  out.bound = variation * std::exp(best.log_value / out.q_n);
  return out;
}

}  // namespace gbv
