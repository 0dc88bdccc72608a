#pragma once

// One-variable variation functionals on sampled periodic functions.
//
// Two distinct maximizations live here:
//
//  * lambda_p_variation: sup over finite families of nonoverlapping
//    subintervals of ( sum_i |f(I_i)|^p / lambda_i )^(1/p), the i-th largest
//    oscillation paired with the i-th weight. The rank-dependent weights make
//    the objective non-additive, so the exact engine is a branch-and-bound
//    over interval families; a greedy heuristic with merge/split local search
//    provides lower bounds at any size.
//
//  * bvq_variation: per n, sup over period-1 partitions with interval length
//    >= 2^-n of ( sum_k |f(I_k)|^q(n) )^(1/q(n)). The exponent is uniform, so
//    the per-n optimum is an exact cyclic dynamic program.
//
// Family objectives depend only on endpoint values, never on interval
// lengths, so both engines operate on index sequences (grid samples or step
// function pieces). Partition meshes do depend on lengths; bvq_variation is
// defined on uniform grids.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "gbv/errors.hpp"
#include "gbv/grid_function.hpp"
#include "gbv/sequences.hpp"

namespace gbv {

enum class Strategy { Exact, Heuristic };
enum class WrapMode { Off, On };

/// Grid interval [a/N, b/N] with a < b <= a + N; endpoints evaluate mod N.
/// With WrapMode::Off both endpoints stay within one period (b <= N).
struct IndexInterval {
  int a = 0;
  int b = 0;
};

/// Nonoverlapping interval family with the oscillation of each member.
struct IntervalFamily {
  std::vector<IndexInterval> intervals;
  std::vector<double> oscillations;
};

struct VariationResult {
  double value = 0.0;
  IntervalFamily witness;
  Strategy method = Strategy::Exact;
  bool exact = true;  // true when value is the grid-model supremum
};

/// |f(b/N) - f(a/N)| with periodic evaluation. Requires a < b <= a + N.
inline double oscillation(const GridFunction1D& f, IndexInterval iv) {
  if (iv.a >= iv.b || iv.b > iv.a + f.n())
    throw ArgumentError("oscillation: need a < b <= a + N");
  return std::abs(f.at(iv.b) - f.at(iv.a));
}

/// ( sum osc_(i)^p / lambda_i )^(1/p) with oscillations sorted descending;
/// descending order is optimal against nondecreasing weights.
inline double assigned_objective(std::vector<double> oscillations, const LambdaSequence& lambda,
                                 double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw ArgumentError("assigned_objective: need p >= 1");
  for (double o : oscillations)
    if (!(o >= 0.0)) throw ArgumentError("assigned_objective: oscillations must be >= 0");
  if (static_cast<std::int64_t>(oscillations.size()) > lambda.max_index())
    throw ArgumentError("assigned_objective: family larger than the weight list");
  std::sort(oscillations.begin(), oscillations.end(), std::greater<double>());
  double inner = 0.0;
  for (std::size_t i = 0; i < oscillations.size(); ++i)
    inner += std::pow(oscillations[i], p) / lambda.lambda(static_cast<std::int64_t>(i) + 1);
  return oscillations.empty() ? 0.0 : std::pow(inner, 1.0 / p);
}

namespace detail {

template <class T>
struct CandidateT {
  int a = 0, b = 0;
  T osc{};    // raw oscillation
  T osc_p{};  // oscillation^p
  std::uint64_t mask = 0;
};

// Cells covered by [a, b): bit i = cell [i, i+1) mod n_cells.
inline std::uint64_t interval_mask(int a, int b, int n_cells) {
  std::uint64_t m = 0;
  for (int c = a; c < b; ++c) m |= std::uint64_t{1} << (c % n_cells);
  return m;
}

template <class T>
struct FamilyOpt {
  T inner{};
  std::vector<int> chosen;  // candidate indices, in descending-oscillation order
};

// Exact maximizer of sum osc^p/lambda over nonoverlapping families.
// Candidates must be sorted by descending osc_p (ties: a, then b ascending).
// The prune bound completes the current family with the best remaining
// oscillations rank-by-rank, ignoring overlap, which dominates every true
// completion.
template <class T>
FamilyOpt<T> branch_and_bound(const std::vector<CandidateT<T>>& cands,
                              std::span<const T> inv_lambda, int max_take) {
  FamilyOpt<T> best;  // empty family, inner = 0
  std::vector<int> stack;
  const int limit = std::min<int>(max_take, static_cast<int>(inv_lambda.size()));

  auto recurse = [&](auto&& self, std::size_t idx, std::uint64_t used, int count,
                     const T& inner) -> void {
    if (inner > best.inner) {
      best.inner = inner;
      best.chosen = stack;
    }
    if (idx >= cands.size() || count >= limit) return;
    T bound = inner;
    int r = count;
    for (std::size_t j = idx; j < cands.size() && r < limit; ++j, ++r)
      bound += cands[j].osc_p * inv_lambda[static_cast<std::size_t>(r)];
    if (!(bound > best.inner)) return;
    if ((cands[idx].mask & used) == 0) {
      stack.push_back(static_cast<int>(idx));
      self(self, idx + 1, used | cands[idx].mask, count + 1,
           inner + cands[idx].osc_p * inv_lambda[static_cast<std::size_t>(count)]);
      stack.pop_back();
    }
    self(self, idx + 1, used, count, inner);
  };
  recurse(recurse, 0, 0, 0, T{});
  return best;
}

template <class T>
void sort_candidates(std::vector<CandidateT<T>>& cands) {
  std::sort(cands.begin(), cands.end(), [](const CandidateT<T>& x, const CandidateT<T>& y) {
    if (x.osc_p != y.osc_p) return x.osc_p > y.osc_p;
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
  });
}

// All candidate intervals with positive oscillation (zero-oscillation members
// never change a family objective).
template <class T, class OscFn, class PowFn>
std::vector<CandidateT<T>> build_candidates(int n_points, WrapMode wrap, OscFn&& osc,
                                            PowFn&& pw) {
  std::vector<CandidateT<T>> cands;
  const int n = n_points;
  for (int a = 0; a < n; ++a) {
    const int b_max = wrap == WrapMode::On ? a + n : n;
    for (int b = a + 1; b <= b_max; ++b) {
      T o = osc(a, b);
      if (!(o > T{})) continue;
      CandidateT<T> c;
      c.a = a;
      c.b = b;
      c.osc = o;
      c.osc_p = pw(o);
      c.mask = interval_mask(a, b, n);
      cands.push_back(std::move(c));
    }
  }
  sort_candidates(cands);
  return cands;
}

// Cyclic local extrema of a sample sequence; for WrapMode::Off the period
// endpoints 0 and N always participate. Plateau interiors are skipped: one
// representative point per attained direction change.
inline std::vector<int> local_extrema(std::span<const double> v, WrapMode wrap) {
  const int n = static_cast<int>(v.size());
  std::vector<int> pts;
  if (wrap == WrapMode::Off) {
    pts.push_back(0);
    for (int i = 1; i < n; ++i) {
      double before = 0.0, after = 0.0;
      for (int j = i - 1; j >= 0 && before == 0.0; --j) before = v[i] - v[j];
      for (int j = i + 1; j <= n && after == 0.0; ++j) after = (j == n ? v[0] : v[j]) - v[i];
      if (before != 0.0 && after != 0.0 && (before > 0) != (after > 0)) pts.push_back(i);
    }
    pts.push_back(n);
    return pts;
  }
  bool constant = true;
  for (int i = 1; i < n && constant; ++i) constant = v[i] == v[0];
  if (constant) return pts;
  for (int i = 0; i < n; ++i) {
    double before = 0.0, after = 0.0;
    for (int s = 1; s <= n && before == 0.0; ++s) before = v[i] - v[(i - s % n + n) % n];
    for (int s = 1; s <= n && after == 0.0; ++s) after = v[(i + s) % n] - v[i];
    if ((before > 0) != (after > 0)) pts.push_back(i);
  }
  return pts;
}

struct HeuristicInterval {
  int a, b;
  double osc;
};

// The heuristic returns its family out-of-band (it has no candidate array
// to index into); single-threaded engines only.
inline std::vector<HeuristicInterval> heuristic_store_;

inline double family_inner(std::vector<double> oscs, std::span<const double> inv_lambda,
                           double p) {
  std::sort(oscs.begin(), oscs.end(), std::greater<double>());
  double inner = 0.0;
  for (std::size_t i = 0; i < oscs.size() && i < inv_lambda.size(); ++i)
    inner += std::pow(oscs[i], p) * inv_lambda[i];
  return inner;
}

// Greedy family from monotone runs between candidate points, improved by
// best-first merge/split moves until a local maximum. Always a valid family,
// hence always a lower bound for the exact engine.
inline FamilyOpt<double> heuristic_family(int n_points, WrapMode wrap,
                                          const std::function<double(int, int)>& osc,
                                          std::span<const int> points,
                                          std::span<const double> inv_lambda, double p) {
  std::vector<HeuristicInterval> chosen;
  const std::size_t cap = inv_lambda.size();
  const int m = static_cast<int>(points.size());
  auto push_run = [&](int a, int b) {
    const double o = osc(a, b);
    if (o > 0.0) chosen.push_back({a, b, o});
  };
  if (wrap == WrapMode::Off) {
    for (int i = 0; i + 1 < m; ++i) push_run(points[i], points[i + 1]);
  } else if (m >= 2) {
    for (int i = 0; i < m; ++i)
      push_run(points[i], i + 1 < m ? points[i + 1] : points[0] + n_points);
  }
  std::sort(chosen.begin(), chosen.end(),
            [](const HeuristicInterval& x, const HeuristicInterval& y) {
              return x.osc != y.osc ? x.osc > y.osc : x.a < y.a;
            });
  if (chosen.size() > cap) chosen.resize(cap);
  std::sort(chosen.begin(), chosen.end(),
            [](const HeuristicInterval& x, const HeuristicInterval& y) { return x.a < y.a; });

  auto inner_of = [&](const std::vector<HeuristicInterval>& fam) {
    std::vector<double> oscs;
    oscs.reserve(fam.size());
    for (const auto& iv : fam) oscs.push_back(iv.osc);
    return family_inner(std::move(oscs), inv_lambda, p);
  };

  double best = inner_of(chosen);
  for (int round = 0; round < 200; ++round) {
    double best_gain = 0.0;
    std::vector<HeuristicInterval> best_fam;
    const std::size_t s = chosen.size();

    // merges of positionally adjacent members (the gap between them is free)
    for (std::size_t i = 0; i + 1 < s || (wrap == WrapMode::On && s >= 2 && i + 1 == s); ++i) {
      std::vector<HeuristicInterval> fam = chosen;
      if (i + 1 < s) {
        fam[i].b = fam[i + 1].b;
        fam.erase(fam.begin() + static_cast<std::ptrdiff_t>(i) + 1);
      } else {  // cyclic merge: last with first
        HeuristicInterval merged{fam.back().a, fam.front().b + n_points, 0.0};
        if (merged.b - merged.a > n_points) continue;
        fam.pop_back();
        fam.erase(fam.begin());
        fam.push_back(merged);
      }
      auto& iv = i + 1 < s ? fam[i] : fam.back();
      iv.osc = osc(iv.a, iv.b);
      if (iv.osc <= 0.0) fam.erase(fam.begin() + (&iv - fam.data()));
      const double val = inner_of(fam);
      if (val - best > best_gain) {
        best_gain = val - best;
        best_fam = std::move(fam);
      }
    }
    // splits at interior candidate points
    for (std::size_t i = 0; i < s && s < cap; ++i) {
      for (int e : points) {
        int ee = e;
        if (wrap == WrapMode::On && ee <= chosen[i].a) ee += n_points;
        if (ee <= chosen[i].a || ee >= chosen[i].b) continue;
        std::vector<HeuristicInterval> fam = chosen;
        fam.erase(fam.begin() + static_cast<std::ptrdiff_t>(i));
        const double o1 = osc(chosen[i].a, ee);
        const double o2 = osc(ee, chosen[i].b);
        if (o1 > 0.0) fam.push_back({chosen[i].a, ee, o1});
        if (o2 > 0.0) fam.push_back({ee % n_points, ee % n_points + (chosen[i].b - ee), o2});
        if (fam.size() > cap) continue;
        const double val = inner_of(fam);
        if (val - best > best_gain) {
          best_gain = val - best;
          best_fam = std::move(fam);
        }
      }
    }
    if (best_gain <= best * 1e-15) break;
    chosen = std::move(best_fam);
    std::sort(chosen.begin(), chosen.end(),
              [](const HeuristicInterval& x, const HeuristicInterval& y) { return x.a < y.a; });
    best += best_gain;
  }

  FamilyOpt<double> out;
  out.inner = best;
  heuristic_store_ = chosen;
  return out;
}

inline std::vector<double> inv_lambda_prefix(const LambdaSequence& lambda, std::int64_t len) {
  len = std::min<std::int64_t>(len, lambda.max_index());
  std::vector<double> inv(static_cast<std::size_t>(len));
  for (std::int64_t i = 1; i <= len; ++i)
    inv[static_cast<std::size_t>(i - 1)] = 1.0 / lambda.lambda(i);
  return inv;
}

}  // namespace detail

struct VariationOptions {
  Strategy strategy = Strategy::Exact;
  WrapMode wrap = WrapMode::Off;
  int exact_cap = 14;  // branch-and-bound size cap (number of sample points)
};

/// Generic engine entry: maximize the assigned objective over nonoverlapping
/// families for an arbitrary oscillation source on n_points cyclic positions.
inline VariationResult maximize_interval_families(int n_points,
                                                  const std::function<double(int, int)>& osc,
                                                  const LambdaSequence& lambda, double p,
                                                  const VariationOptions& opts,
                                                  std::span<const int> heuristic_points = {}) {
  if (!(p >= 1.0) || !std::isfinite(p))
    throw ArgumentError("lambda_p_variation: need finite p >= 1");
  if (n_points < 1) throw ArgumentError("variation: empty sample sequence");

  VariationResult res;
  res.method = opts.strategy;
  const auto inv = detail::inv_lambda_prefix(lambda, n_points);

  if (opts.strategy == Strategy::Exact) {
    if (n_points > opts.exact_cap)
      throw CapacityError("lambda_p_variation: exact strategy capped at " +
                          std::to_string(opts.exact_cap) +
                          " sample points; use the heuristic strategy beyond it");
    auto cands = detail::build_candidates<double>(n_points, opts.wrap, osc,
                                                  [p](double o) { return std::pow(o, p); });
    auto opt = detail::branch_and_bound<double>(cands, inv, n_points);
    res.value = opt.inner > 0.0 ? std::pow(opt.inner, 1.0 / p) : 0.0;
    res.exact = true;
    for (int idx : opt.chosen) {
      res.witness.intervals.push_back({cands[static_cast<std::size_t>(idx)].a,
                                       cands[static_cast<std::size_t>(idx)].b});
      res.witness.oscillations.push_back(cands[static_cast<std::size_t>(idx)].osc);
    }
    return res;
  }

  std::vector<int> pts(heuristic_points.begin(), heuristic_points.end());
  if (pts.empty()) {
    pts.resize(static_cast<std::size_t>(n_points));
    for (int i = 0; i < n_points; ++i) pts[static_cast<std::size_t>(i)] = i;
    if (opts.wrap == WrapMode::Off) pts.push_back(n_points);
  }
  auto opt = detail::heuristic_family(n_points, opts.wrap, osc, pts, inv, p);
  res.value = opt.inner > 0.0 ? std::pow(opt.inner, 1.0 / p) : 0.0;
  res.exact = false;
  for (const auto& iv : detail::heuristic_store_) {
    res.witness.intervals.push_back({iv.a, iv.b});
    res.witness.oscillations.push_back(iv.osc);
  }
  return res;
}

/// Waterman–Shiba style p-Lambda-variation of a sampled periodic function.
/// Exact strategy: branch-and-bound over all grid interval families (size
/// capped). Heuristic: monotone-run greedy with merge/split local search,
/// usable at any size; its value never exceeds the exact one.
inline VariationResult lambda_p_variation(const GridFunction1D& f, const LambdaSequence& lambda,
                                          double p, const VariationOptions& opts = {}) {
  const int n = f.n();
  auto osc = [&f](int a, int b) { return std::abs(f.at(b) - f.at(a)); };
  if (opts.strategy == Strategy::Heuristic) {
    auto pts = detail::local_extrema(f.samples(), opts.wrap);
    return maximize_interval_families(n, osc, lambda, p, opts, pts);
  }
  return maximize_interval_families(n, osc, lambda, p, opts);
}

/// Variation of a step function: identical objective on its piece-value
/// sequence (family values depend only on attainable endpoint values).
inline VariationResult lambda_p_variation(const StepFunction1D& f, const LambdaSequence& lambda,
                                          double p, const VariationOptions& opts = {}) {
  return lambda_p_variation(GridFunction1D(f.linear_piece_values()), lambda, p, opts);
}

// ---------------------------------------------------------------------------
// Partition variation with mesh-indexed exponents
// ---------------------------------------------------------------------------

struct BvqRow {
  int n = 0;
  double q_n = 1.0;
  double mesh = 0.0;  // enforced minimal interval length (grid-exact)
  bool clamped = false;
  double value = 0.0;
};

struct BvqResult {
  double value = 0.0;     // sup over n of the per-n values
  int best_n = 0;         // smallest n attaining the sup
  IntervalFamily witness; // optimal partition at best_n
  std::vector<BvqRow> table;
  std::vector<std::string> notes;
};

struct BvqOptions {
  WrapMode wrap = WrapMode::On;  // period-1 partitions include one wraparound interval
  int size_cap = 256;            // N cap (cubic dynamic program)
};

namespace detail {

struct PartitionOpt {
  double sum = -1.0;
  std::vector<int> breaks;  // positions r = t_0 < t_1 < ... < t_s = r + N
};

// Exact best partition sum for one exponent: cyclic DP over start positions.
inline PartitionOpt best_partition_sum(std::span<const double> v, int gap, double q,
                                       WrapMode wrap) {
  const int n = static_cast<int>(v.size());
  std::vector<double> powm(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      powm[static_cast<std::size_t>(x) * n + y] = std::pow(std::abs(v[x] - v[y]), q);

  PartitionOpt best;
  int best_r = -1;
  std::vector<double> dp(static_cast<std::size_t>(n) + 1);
  const int r_end = wrap == WrapMode::On ? n : 1;
  for (int r = 0; r < r_end; ++r) {
    dp[0] = 0.0;
    for (int t = 1; t <= n; ++t) {
      double m = -1.0;
      for (int s = 0; s + gap <= t; ++s) {
        const double cand =
            dp[s] >= 0.0
                ? dp[s] + powm[static_cast<std::size_t>((r + s) % n) * n + (r + t) % n]
                : -1.0;
        if (cand > m) m = cand;
      }
      dp[t] = m;
    }
    if (dp[n] > best.sum) {
      best.sum = dp[n];
      best_r = r;
    }
  }
  if (best_r < 0) return best;

  // recompute the winning start with parents for the witness
  std::vector<int> parent(static_cast<std::size_t>(n) + 1, -1);
  dp.assign(static_cast<std::size_t>(n) + 1, -1.0);
  dp[0] = 0.0;
  for (int t = 1; t <= n; ++t) {
    for (int s = 0; s + gap <= t; ++s) {
      if (dp[s] < 0.0) continue;
      const double cand = dp[s] + powm[static_cast<std::size_t>((best_r + s) % n) * n +
                                       (best_r + t) % n];
      if (cand > dp[t]) {
        dp[t] = cand;
        parent[t] = s;
      }
    }
  }
  std::vector<int> rev;
  for (int t = n; t > 0; t = parent[static_cast<std::size_t>(t)]) rev.push_back(t);
  best.breaks.push_back(best_r);
  for (auto it = rev.rbegin(); it != rev.rend(); ++it) best.breaks.push_back(best_r + *it);
  return best;
}

}  // namespace detail

/// Per-mesh partition variation: for each n <= n_max the exact optimum over
/// grid partitions with interval length >= 2^-n (clamped to one grid cell
/// when 2^-n falls below the grid spacing, with a recorded note), evaluated
/// with exponent q(n); the overall value is the running supremum.
inline BvqResult bvq_variation(const GridFunction1D& f, const QSequence& q, int n_max,
                               const BvqOptions& opts = {}) {
  if (n_max < 1) throw ArgumentError("bvq_variation: need n_max >= 1");
  const int n_pts = f.n();
  if (n_pts > opts.size_cap)
    throw CapacityError("bvq_variation: grid size exceeds the partition cap " +
                        std::to_string(opts.size_cap));

  BvqResult res;
  res.best_n = 0;
  bool clamp_noted = false;
  for (int n = 1; n <= n_max; ++n) {
    int gap;
    bool clamped = false;
    if (n >= 62 || (std::int64_t{1} << n) >= n_pts) {
      gap = 1;
      clamped = (n >= 62) || (std::int64_t{1} << n) > n_pts;
    } else {
      gap = static_cast<int>((n_pts + (std::int64_t{1} << n) - 1) >> n);
    }
    const double qn = q.q(n);
    auto opt = detail::best_partition_sum(f.samples(), gap, qn, opts.wrap);
    BvqRow row;
    row.n = n;
    row.q_n = qn;
    row.mesh = static_cast<double>(gap) / n_pts;
    row.clamped = clamped;
    row.value = opt.sum > 0.0 ? std::pow(opt.sum, 1.0 / qn) : 0.0;
    res.table.push_back(row);
    if (clamped && !clamp_noted) {
      res.notes.push_back("n=" + std::to_string(n) +
                          ": 2^-n is below the grid spacing 1/" + std::to_string(n_pts) +
                          "; minimal interval length clamped to one grid cell");
      clamp_noted = true;
    }
    if (row.value > res.value || res.best_n == 0) {
      if (row.value > res.value) {
        res.value = row.value;
        res.best_n = n;
        res.witness.intervals.clear();
        res.witness.oscillations.clear();
        for (std::size_t i = 0; i + 1 < opt.breaks.size(); ++i) {
          IndexInterval iv{opt.breaks[i], opt.breaks[i + 1]};
          res.witness.intervals.push_back(iv);
          res.witness.oscillations.push_back(std::abs(f.at(iv.b) - f.at(iv.a)));
        }
      } else if (res.best_n == 0) {
        res.best_n = n;
      }
    }
  }
  return res;
}

}  // namespace gbv
