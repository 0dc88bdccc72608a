#pragma once

// Constructor for the separating counterexample: a sum of block step
// functions, one stage per dyadic band, that lies in the sharp
// p-Lambda-variation ball yet makes the mesh-indexed partition variation
// blow up stage by stage.
//
// Stage k lives on [2^-k, 2^-(k-1)) and is determined by one integer n (the
// block pitch) found by search:
//
//   m      = argmax_{rho <= n} rho / S_rho^(1/p)     (smallest on ties)
//   ratio  = S_m^(1/p) / m^(1/q_used)                must be < 2^-4k
//   s      = floor((n + 2^k) / 2^(k+1))
//   blocks = min(m, s)
//   amplitude = 2^-k / S_m^(1/p)
//
// q_used is the exponent the partition at the stage's own mesh actually
// sees: by default q is sampled at the mesh level ceil(log2 n) (the stage's
// blocks have pitch 1/n >= 2^-ceil(log2 n)); sampling at n itself is kept as
// an option (QEvalPoint::StageN) and recorded in every report.
//
// Two exact integer invariants are checked on every constructed stage:
//   (2s - 1) * 2^(k+1) >= n        (the block pitch realizes the mesh)
//   (2*blocks - 1) * 2^k <= n      (all blocks fit inside the stage band)
//
// The candidate value rho / S_rho^(1/p) is nondecreasing in rho (the step
// ratio is (1+1/rho)^(1-1/p) or larger), with ties exactly for constant
// weight prefixes at p = 1; the geometric search mode exploits this to jump
// through doubling pitches with closed-form partial sums.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "gbv/errors.hpp"
#include "gbv/grid_function.hpp"
#include "gbv/rational.hpp"
#include "gbv/sequences.hpp"

namespace gbv {

enum class QEvalPoint { MeshIndex, StageN };

inline std::string to_string(QEvalPoint e) {
  return e == QEvalPoint::MeshIndex ? "mesh-index" : "stage-n";
}

/// Mesh level of a pitch-n stage: the smallest e with 2^e >= n.
inline std::int64_t stage_mesh_level(std::int64_t n) {
  if (n < 1) throw ArgumentError("stage_mesh_level: need n >= 1");
  if (n == 1) return 1;
  return static_cast<std::int64_t>(std::bit_width(static_cast<std::uint64_t>(n - 1)));
}

struct WitnessStage {
  int k = 0;
  std::int64_t n = 0;       // block pitch
  std::int64_t m = 0;       // argmax of rho / S_rho^(1/p)
  std::int64_t s = 0;       // floor((n + 2^k) / 2^(k+1))
  std::int64_t blocks = 0;  // min(m, s)
  double s_m = 0.0;         // S_m
  double phi = 0.0;         // 1 / S_m
  double amplitude = 0.0;   // 2^-k * phi^(1/p)
  double ratio = 0.0;       // S_m^(1/p) / m^(1/q_used)
  std::int64_t q_eval_n = 0;
  double q_used = 1.0;
};

struct StageSearchOptions {
  std::int64_t cap = std::int64_t{1} << 20;  // largest pitch examined
  bool geometric = false;                    // doubling pitches, closed-form sums
  QEvalPoint q_eval = QEvalPoint::MeshIndex;
};

struct StageSearchResult {
  std::optional<WitnessStage> stage;
  std::int64_t candidates_tried = 0;
  double best_ratio = std::numeric_limits<double>::infinity();
  double best_ratio_log2 = std::numeric_limits<double>::infinity();
  std::int64_t best_ratio_n = 0;
  double threshold_log2 = 0.0;  // acceptance: ratio_log2 < -4k
};

namespace detail {

inline WitnessStage make_stage(int k, std::int64_t n, std::int64_t m, double s_m,
                               double ratio_log2, std::int64_t q_eval_n, double q_used,
                               double p) {
  WitnessStage st;
  st.k = k;
  st.n = n;
  st.m = m;
  const BigInt pow_k = BigInt(1) << k;
  const BigInt s_big = (BigInt(n) + pow_k) >> (k + 1);
  st.s = static_cast<std::int64_t>(s_big);
  st.blocks = std::min(st.m, st.s);
  st.s_m = s_m;
  st.phi = 1.0 / s_m;
  st.amplitude = std::exp2(static_cast<double>(-k)) * std::pow(st.phi, 1.0 / p);
  st.ratio = std::exp2(ratio_log2);
  st.q_eval_n = q_eval_n;
  st.q_used = q_used;

  if ((2 * s_big - 1) * (pow_k << 1) < BigInt(n))
    throw VerificationError("stage invariant failed: (2s-1)*2^(k+1) >= n");
  if ((2 * BigInt(st.blocks) - 1) * pow_k > BigInt(n))
    throw VerificationError("stage invariant failed: (2*blocks-1)*2^k <= n");
  if (st.blocks < 1) throw VerificationError("stage invariant failed: blocks >= 1");
  return st;
}

}  // namespace detail

/// Search the pitch window [2^(k+2), cap] for the first stage-k witness.
inline StageSearchResult find_stage(const LambdaSequence& lambda, const QSequence& q, double p,
                                    int k, const StageSearchOptions& opts = {}) {
  if (k < 1 || k > 58) throw ArgumentError("find_stage: need 1 <= k <= 58");
  if (!(p >= 1.0) || !std::isfinite(p)) throw ArgumentError("find_stage: need finite p >= 1");
  const std::int64_t n_min = std::int64_t{1} << (k + 2);
  StageSearchResult res;
  res.threshold_log2 = -4.0 * k;
  if (opts.cap < n_min)
    throw CapacityError("find_stage: pitch cap " + std::to_string(opts.cap) +
                        " is below the smallest admissible pitch 2^(k+2) = " +
                        std::to_string(n_min));

  const double inv_p = 1.0 / p;
  auto eval_n = [&](std::int64_t n) {
    return opts.q_eval == QEvalPoint::MeshIndex ? stage_mesh_level(n) : n;
  };

  if (opts.geometric) {
    if (lambda.kind() == LambdaKind::Explicit)
      throw ArgumentError("find_stage: the geometric search needs a closed-form weight family");
    const bool constant_weights =
        (lambda.kind() == LambdaKind::Power && lambda.alpha() == 0.0) ||
        (lambda.kind() == LambdaKind::Affine && lambda.affine_a() == 0.0);
    for (std::int64_t n = n_min; n <= opts.cap && n > 0; n *= 2) {
      ++res.candidates_tried;
      const std::int64_t m = (constant_weights && p == 1.0) ? 1 : n;
      const double s_m = lambda.partial_sum(m);
      const std::int64_t qn = eval_n(n);
      const double q_used = q.q(qn);
      const double ratio_log2 =
          (inv_p * std::log(s_m) - std::log(static_cast<double>(m)) / q_used) /
          std::numbers::ln2;
      if (ratio_log2 < res.best_ratio_log2) {
        res.best_ratio_log2 = ratio_log2;
        res.best_ratio = std::exp2(ratio_log2);
        res.best_ratio_n = n;
      }
      if (ratio_log2 < res.threshold_log2) {
        res.stage = detail::make_stage(k, n, m, s_m, ratio_log2, qn, q_used, p);
        return res;
      }
    }
    return res;
  }

  const std::int64_t rho_max = std::min(opts.cap, lambda.max_index());
  double s = 0.0;
  double best_v_log = -std::numeric_limits<double>::infinity();
  std::int64_t m = 1;
  double s_m = 0.0;
  for (std::int64_t rho = 1; rho <= rho_max; ++rho) {
    s += 1.0 / lambda.lambda(rho);
    const double v_log = std::log(static_cast<double>(rho)) - inv_p * std::log(s);
    if (v_log > best_v_log) {
      best_v_log = v_log;
      m = rho;
      s_m = s;
    }
    if (rho < n_min) continue;
    ++res.candidates_tried;
    const std::int64_t qn = eval_n(rho);
    const double q_used = q.q(qn);
    const double ratio_log2 =
        (inv_p * std::log(s_m) - std::log(static_cast<double>(m)) / q_used) /
        std::numbers::ln2;
    if (ratio_log2 < res.best_ratio_log2) {
      res.best_ratio_log2 = ratio_log2;
      res.best_ratio = std::exp2(ratio_log2);
      res.best_ratio_n = rho;
    }
    if (ratio_log2 < res.threshold_log2) {
      res.stage = detail::make_stage(k, rho, m, s_m, ratio_log2, qn, q_used, p);
      return res;
    }
  }
  return res;
}

/// The assembled counterexample: one block stage per found k, each supported
/// in its own dyadic band, evaluated exactly at rational points.
class WitnessFunction {
 public:
  WitnessFunction() = default;
  WitnessFunction(std::vector<WitnessStage> stages, double p) : stages_(std::move(stages)), p_(p) {
    std::sort(stages_.begin(), stages_.end(),
              [](const WitnessStage& a, const WitnessStage& b) { return a.k < b.k; });
    for (std::size_t i = 1; i < stages_.size(); ++i)
      if (stages_[i].k == stages_[i - 1].k)
        throw ArgumentError("WitnessFunction: duplicate stage index");
  }

  const std::vector<WitnessStage>& stages() const { return stages_; }
  double p() const { return p_; }

  std::int64_t total_blocks() const {
    std::int64_t total = 0;
    for (const auto& st : stages_) total += st.blocks;
    return total;
  }

  /// Exact evaluation: stage k contributes its amplitude on the even block
  /// cells of its band [2^-k, 2^-(k-1)), zero elsewhere.
  double value_at(const Rational& t) const {
    Rational r = t - Rational(boost::multiprecision::numerator(t) /
                              boost::multiprecision::denominator(t));
    if (r < 0) r += 1;
    if (r == 0) return 0.0;
    for (const auto& st : stages_) {
      const Rational lo(BigInt(1), BigInt(1) << st.k);
      if (r < lo || r >= lo * 2) continue;
      const Rational u = (r - lo) * st.n;
      const BigInt w = boost::multiprecision::numerator(u) /
                       boost::multiprecision::denominator(u);
      if (w < 2 * BigInt(st.blocks) - 1 && (w & 1) == 0) return st.amplitude;
      return 0.0;
    }
    return 0.0;
  }

  /// One stage as an explicit step function (block edges as breakpoints).
  StepFunction1D stage_step_function(int k, std::int64_t piece_cap = 1 << 20) const {
    for (const auto& st : stages_)
      if (st.k == k) {
        std::vector<Rational> bps;
        std::vector<double> vals;
        append_stage(st, bps, vals, piece_cap);
        if (bps.empty() || bps.front() != 0) {
          bps.insert(bps.begin(), Rational(0));
          vals.insert(vals.begin(), 0.0);
        }
        return StepFunction1D(std::move(bps), std::move(vals));
      }
    throw ArgumentError("stage_step_function: no stage with k = " + std::to_string(k));
  }

  /// The whole witness as one step function.
  StepFunction1D step_function(std::int64_t piece_cap = 1 << 20) const {
    if (stages_.empty()) throw ArgumentError("step_function: empty witness");
    std::vector<Rational> bps{Rational(0)};
    std::vector<double> vals{0.0};
    for (auto it = stages_.rbegin(); it != stages_.rend(); ++it)
      append_stage(*it, bps, vals, piece_cap);
    return StepFunction1D(std::move(bps), std::move(vals));
  }

 private:
  // Append one stage's breakpoints/values, collapsing duplicate breakpoints
  // and dropping a closing edge that lands exactly on 1.
  void append_stage(const WitnessStage& st, std::vector<Rational>& bps,
                    std::vector<double>& vals, std::int64_t piece_cap) const {
    if (2 * st.blocks + 1 + static_cast<std::int64_t>(bps.size()) > piece_cap)
      throw CapacityError("witness step function exceeds the piece cap; raise piece_cap");
    const Rational lo(BigInt(1), BigInt(1) << st.k);
    auto push = [&](Rational bp, double v) {
      if (bp >= 1) return;
      if (!bps.empty() && bps.back() == bp)
        vals.back() = v;
      else {
        bps.push_back(std::move(bp));
        vals.push_back(v);
      }
    };
    for (std::int64_t j = 1; j <= st.blocks; ++j) {
      push(lo + Rational(2 * j - 2, st.n), st.amplitude);
      push(lo + Rational(2 * j - 1, st.n), 0.0);
    }
  }

  std::vector<WitnessStage> stages_;
  double p_ = 1.0;
};

struct WitnessBuild {
  WitnessFunction function;
  std::vector<StageSearchResult> searches;  // one per requested k, in order
  bool complete = false;
};

/// Search stages k = 1..stage_count and assemble every found one.
inline WitnessBuild build_witness(const LambdaSequence& lambda, const QSequence& q, double p,
                                  int stage_count, const StageSearchOptions& opts = {}) {
  if (stage_count < 1) throw ArgumentError("build_witness: need stage_count >= 1");
  WitnessBuild build;
  std::vector<WitnessStage> found;
  for (int k = 1; k <= stage_count; ++k) {
    build.searches.push_back(find_stage(lambda, q, p, k, opts));
    if (build.searches.back().stage) found.push_back(*build.searches.back().stage);
  }
  build.complete = static_cast<int>(found.size()) == stage_count;
  build.function = WitnessFunction(std::move(found), p);
  return build;
}

struct StageNormReport {
  int k = 0;
  double norm = 0.0;   // amplitude * S_{2*blocks}^(1/p): the stage's exact variation
  double bound = 0.0;  // 2^-k * 2^(1/p)
  bool within = false;
};

struct WitnessNormReport {
  std::vector<StageNormReport> stages;
  double norm_sum = 0.0;
  double bound_sum = 0.0;
  bool within_bound = true;  // every stage within its geometric bound
};

/// Stage norms: a pitch-n block stage has exactly 2*blocks jump edges of
/// equal size, so its sharp variation is amplitude * S_{2*blocks}^(1/p);
/// blocks <= m forces S_{2*blocks} <= 2 S_m, hence the 2^-k * 2^(1/p) bound.
inline WitnessNormReport witness_norm_bound(const WitnessFunction& f,
                                            const LambdaSequence& lambda, double p) {
  WitnessNormReport rep;
  for (const auto& st : f.stages()) {
    StageNormReport sn;
    sn.k = st.k;
    const std::int64_t edges = std::min(2 * st.blocks, lambda.max_index());
    sn.norm = st.amplitude * std::pow(lambda.partial_sum(edges), 1.0 / p);
    sn.bound = std::exp2(static_cast<double>(-st.k)) * std::exp2(1.0 / p);
    sn.within = sn.norm <= sn.bound * (1.0 + 1e-12);
    rep.norm_sum += sn.norm;
    rep.bound_sum += sn.bound;
    rep.within_bound = rep.within_bound && sn.within;
    rep.stages.push_back(sn);
  }
  return rep;
}

struct StageDivergenceReport {
  int k = 0;
  std::int64_t n_mesh = 0;   // mesh level carrying the stage's partition
  double q_used = 1.0;
  double value_log2 = 0.0;   // log2( (2*blocks - 1) * amplitude^q_used )
  double value = 0.0;
  double threshold_log2 = 0.0;  // k
  bool ok = false;
  std::string branch;  // which bound capped the block count: "m-limited" | "s-limited"
};

struct WitnessDivergenceReport {
  std::vector<StageDivergenceReport> stages;
  bool all_ok = true;
};

/// Divergence certificate: the equal-jump partition supported on stage k has
/// 2*blocks - 1 intervals of jump `amplitude` at mesh level ceil(log2 n), so
/// its exponent-q_used sum is (2*blocks - 1) * amplitude^q_used, required to
/// reach 2^k.
inline WitnessDivergenceReport witness_divergence_check(const WitnessFunction& f) {
  WitnessDivergenceReport rep;
  for (const auto& st : f.stages()) {
    StageDivergenceReport sd;
    sd.k = st.k;
    sd.n_mesh = stage_mesh_level(st.n);
    sd.q_used = st.q_used;
    sd.value_log2 = std::log2(static_cast<double>(2 * st.blocks - 1)) +
                    st.q_used * std::log2(st.amplitude);
    sd.value = std::exp2(sd.value_log2);
    sd.threshold_log2 = static_cast<double>(st.k);
    sd.ok = sd.value_log2 >= sd.threshold_log2 - 1e-9;
    sd.branch = st.blocks == st.m ? "m-limited" : "s-limited";
    rep.all_ok = rep.all_ok && sd.ok;
    rep.stages.push_back(sd);
  }
  return rep;
}

}  // namespace gbv
