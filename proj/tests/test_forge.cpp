#include <cmath>
#include <random>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include <gbv/gbv.hpp>
#include <gbv/oracle.hpp>

namespace {

// v(rho) = rho / S_rho^{1/p}: the quantity whose running argmax drives the
// stage search.
double v_of(const gbv::LambdaSequence& lam, std::int64_t rho, double p) {
  return static_cast<double>(rho) / std::pow(lam.partial_sum(rho), 1.0 / p);
}

}  // namespace

TEST_CASE("mesh level of a block pitch", "[forge]") {
  CHECK(gbv::stage_mesh_level(1) == 1);
  CHECK(gbv::stage_mesh_level(2) == 1);
  CHECK(gbv::stage_mesh_level(3) == 2);
  CHECK(gbv::stage_mesh_level(4) == 2);
  CHECK(gbv::stage_mesh_level(5) == 3);
  CHECK(gbv::stage_mesh_level(20) == 5);
  CHECK(gbv::stage_mesh_level(1 << 16) == 16);
  CHECK(gbv::stage_mesh_level((1 << 16) + 1) == 17);
  CHECK_THROWS_AS(gbv::stage_mesh_level(0), gbv::ArgumentError);
}

TEST_CASE("rho / S_rho^(1/p) is nondecreasing for nondecreasing weights", "[forge]") {
  std::mt19937_64 rng(404);
  std::uniform_real_distribution<double> unif(0.5, 5.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> w(30);
    for (auto& x : w) x = unif(rng);
    std::sort(w.begin(), w.end());
    auto lam = gbv::LambdaSequence::explicit_list(w);
    const double p = (trial % 2 == 0) ? 1.0 : 2.0;
    for (std::int64_t rho = 1; rho < 30; ++rho)
      CHECK(v_of(lam, rho + 1, p) >= v_of(lam, rho, p) * (1.0 - 1e-12));
  }
}

TEST_CASE("stage search on rapidly summable weights", "[forge]") {
  // cubic weights: S converges near 1.2021, so S_n/n crosses 1/16 at n = 20
  auto lam = gbv::LambdaSequence::power(3.0);
  auto q1 = gbv::QSequence::constant(1.0);
  auto res = gbv::find_stage(lam, q1, 1.0, 1);
  REQUIRE(res.stage.has_value());
  const auto& st = *res.stage;
  CHECK(st.n == 20);
  CHECK(st.m == 20);
  CHECK(st.s == 5);
  CHECK(st.blocks == 5);
  CHECK(st.q_used == 1.0);
  CHECK(st.s_m == Catch::Approx(lam.partial_sum(20)).epsilon(1e-15));
  CHECK(st.amplitude == Catch::Approx(0.5 / lam.partial_sum(20)).epsilon(1e-13));
  CHECK(st.ratio == Catch::Approx(lam.partial_sum(20) / 20.0).epsilon(1e-12));
  CHECK(st.ratio < 1.0 / 16.0);
  CHECK(res.threshold_log2 == -4.0);

  // invariants: the band fits the pitch and the support fits the band
  CHECK(st.s >= 2);
  CHECK((2 * st.s - 1) * 4 >= st.n);       // (2s-1) 2^{k+1} >= n
  CHECK((2 * st.blocks - 1) * 2 <= st.n);  // (2N-1) 2^k <= n
  // amplitude * 2^k * S_m^{1/p} == 1 by construction
  CHECK(st.amplitude * 2.0 * lam.partial_sum(st.m) == Catch::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("witness step function and exact evaluation agree", "[forge]") {
  auto lam = gbv::LambdaSequence::power(3.0);
  auto q1 = gbv::QSequence::constant(1.0);
  auto build = gbv::build_witness(lam, q1, 1.0, 1);
  REQUIRE(build.complete);
  const auto& fn = build.function;
  const double a = fn.stages()[0].amplitude;

  using gbv::Rational;
  CHECK(fn.value_at(Rational(0)) == 0.0);
  CHECK(fn.value_at(Rational(1, 4)) == 0.0);                  // below the band
  CHECK(fn.value_at(Rational(1, 2)) == a);                    // first block
  CHECK(fn.value_at(Rational(1, 2) + Rational(1, 20)) == 0.0);
  CHECK(fn.value_at(Rational(1, 2) + Rational(2, 20)) == a);
  CHECK(fn.value_at(Rational(1, 2) + Rational(8, 20)) == a);  // fifth block
  CHECK(fn.value_at(Rational(1, 2) + Rational(9, 20)) == 0.0);
  CHECK(fn.value_at(Rational(99, 100)) == 0.0);
  CHECK(fn.value_at(Rational(3, 2)) == a);                    // periodic
  CHECK(fn.value_at(Rational(-1, 2)) == a);

  auto step = fn.stage_step_function(1);
  REQUIRE(step.pieces() == 11);
  // every piece value matches exact evaluation at the piece midpoint
  const auto& bps = step.breakpoints();
  const auto& vals = step.piece_values();
  for (std::size_t i = 0; i < bps.size(); ++i) {
    const Rational hi = (i + 1 < bps.size()) ? bps[i + 1] : Rational(1);
    const Rational mid = (bps[i] + hi) / 2;
    CHECK(step.value_at(mid) == vals[i]);
    CHECK(fn.value_at(mid) == vals[i]);
  }
  CHECK_THROWS_AS(fn.stage_step_function(2), gbv::ArgumentError);

  // the variation engines see exactly amplitude * S_10: ten jumps of equal
  // size paired with the first ten weights
  auto var = gbv::lambda_p_variation(step, lam, 1.0);
  CHECK(var.value == Catch::Approx(a * lam.partial_sum(10)).epsilon(1e-12));
  auto vals_lin = step.linear_piece_values();
  std::vector<double> w10;
  for (int i = 1; i <= 12; ++i) w10.push_back(static_cast<double>(i * i * i));
  auto oracle = gbv::oracle_lambda_p_variation(vals_lin, w10, 1.0, gbv::WrapMode::Off);
  CHECK(oracle.value == Catch::Approx(var.value).epsilon(1e-12));
}

TEST_CASE("norm and divergence reports on the cubic-weight stage", "[forge]") {
  auto lam = gbv::LambdaSequence::power(3.0);
  auto q1 = gbv::QSequence::constant(1.0);
  auto build = gbv::build_witness(lam, q1, 1.0, 1);
  REQUIRE(build.complete);

  auto norm = gbv::witness_norm_bound(build.function, lam, 1.0);
  REQUIRE(norm.stages.size() == 1);
  const double a = build.function.stages()[0].amplitude;
  CHECK(norm.stages[0].norm == Catch::Approx(a * lam.partial_sum(10)).epsilon(1e-13));
  CHECK(norm.stages[0].bound == Catch::Approx(1.0).epsilon(1e-15));  // 2^-1 * 2^1
  CHECK(norm.stages[0].within);
  CHECK(norm.within_bound);

  auto div = gbv::witness_divergence_check(build.function);
  REQUIRE(div.stages.size() == 1);
  CHECK(div.stages[0].n_mesh == 5);
  CHECK(div.stages[0].value == Catch::Approx(9.0 * a).epsilon(1e-12));
  CHECK(div.stages[0].threshold_log2 == 1.0);
  CHECK(div.stages[0].ok);  // 9a = 3.75 >= 2
  CHECK(div.stages[0].branch == "s-limited");
  CHECK(div.all_ok);
}

TEST_CASE("search is exhausted when the criterion holds", "[forge]") {
  // unit weights with q(n) = n + 1: v(rho) = 1 for every rho, so the ratio
  // never drops below 1 and no pitch is accepted
  auto ones = gbv::LambdaSequence::power(0.0);
  auto q_lin = gbv::QSequence::linear(1.0, 1.0);
  gbv::StageSearchOptions opts;
  opts.cap = 4096;
  auto res = gbv::find_stage(ones, q_lin, 1.0, 1, opts);
  CHECK_FALSE(res.stage.has_value());
  CHECK(res.candidates_tried == 4096 - 8 + 1);
  CHECK(res.best_ratio == Catch::Approx(1.0).epsilon(1e-12));
  CHECK(res.best_ratio_n == 8);

  auto build = gbv::build_witness(ones, q_lin, 1.0, 1, opts);
  CHECK_FALSE(build.complete);
  CHECK(build.function.stages().empty());
  CHECK_THROWS_AS(build.function.step_function(), gbv::ArgumentError);
}

TEST_CASE("geometric pitch search with closed-form harmonic sums", "[forge]") {
  auto lam = gbv::LambdaSequence::power(1.0);
  auto q1 = gbv::QSequence::constant(1.0);
  gbv::StageSearchOptions geo;
  geo.geometric = true;
  geo.cap = std::int64_t{1} << 30;

  auto r1 = gbv::find_stage(lam, q1, 1.0, 1, geo);
  REQUIRE(r1.stage.has_value());
  CHECK(r1.stage->n == 128);  // first doubling with H_n / n < 1/16
  CHECK(r1.stage->m == 128);
  CHECK(r1.stage->s == 32);
  CHECK(r1.stage->blocks == 32);

  // unit-stride search accepts earlier: the exact first crossing is n = 80
  gbv::StageSearchOptions unit;
  unit.cap = 1 << 20;
  auto r1u = gbv::find_stage(lam, q1, 1.0, 1, unit);
  REQUIRE(r1u.stage.has_value());
  CHECK(r1u.stage->n == 80);
  CHECK(r1u.stage->n <= r1.stage->n);

  // explicit weight lists have no closed-form tail sums
  gbv::StageSearchOptions geo_bad = geo;
  auto expl = gbv::LambdaSequence::explicit_list({1.0, 2.0});
  CHECK_THROWS_AS(gbv::find_stage(expl, q1, 1.0, 1, geo_bad), gbv::ArgumentError);
}

TEST_CASE("multi-stage geometric witness passes both certificates", "[forge]") {
  auto lam = gbv::LambdaSequence::power(1.0);
  auto q1 = gbv::QSequence::constant(1.0);
  gbv::StageSearchOptions geo;
  geo.geometric = true;
  geo.cap = std::int64_t{1} << 50;

  auto build = gbv::build_witness(lam, q1, 1.0, 3, geo);
  REQUIRE(build.complete);
  REQUIRE(build.searches.size() == 3);
  const auto& st = build.function.stages();
  REQUIRE(st.size() == 3);
  CHECK(st[0].n == 128);
  CHECK(st[1].n == 4096);
  CHECK(st[2].n == 65536);
  CHECK(st[1].blocks == 512);
  CHECK(st[2].blocks == 4096);

  auto norm = gbv::witness_norm_bound(build.function, lam, 1.0);
  CHECK(norm.within_bound);
  // bounds halve per stage: 1 + 1/2 + 1/4
  CHECK(norm.bound_sum == Catch::Approx(1.75).epsilon(1e-13));

  auto div = gbv::witness_divergence_check(build.function);
  CHECK(div.all_ok);
  for (const auto& sd : div.stages)
    CHECK(sd.value_log2 >= sd.threshold_log2 - 1e-9);

  // exact evaluation in each band
  using gbv::Rational;
  const auto& fn = build.function;
  CHECK(fn.value_at(Rational(1, 2)) == st[0].amplitude);
  CHECK(fn.value_at(Rational(1, 4)) == st[1].amplitude);
  CHECK(fn.value_at(Rational(1, 8)) == st[2].amplitude);
  CHECK(fn.value_at(Rational(1, 16)) == 0.0);  // below every band
  CHECK(fn.value_at(Rational(1, 4) + Rational(1, 4096)) == 0.0);
  CHECK(fn.value_at(Rational(1, 4) + Rational(2, 4096)) == st[1].amplitude);

  auto step = fn.step_function();
  CHECK(step.pieces() ==
        1 + 2 * (st[0].blocks + st[1].blocks + st[2].blocks));
  CHECK(fn.total_blocks() == st[0].blocks + st[1].blocks + st[2].blocks);

  gbv::StageSearchOptions small_cap;
  small_cap.cap = 16;
  CHECK_THROWS_AS(gbv::find_stage(lam, q1, 1.0, 3, small_cap), gbv::CapacityError);
}

TEST_CASE("mesh-indexed exponents unlock stages that pitch-indexed ones deny", "[forge]") {
  // harmonic weights with log-log exponents: evaluating q at the mesh level
  // (about 16 at these pitches) accepts a stage near 5.4e4; evaluating q at
  // the pitch itself (about 4) keeps the ratio three orders too large
  auto lam = gbv::LambdaSequence::power(1.0);
  auto q = gbv::QSequence::loglog(1.0, 3.0);
  gbv::StageSearchOptions mesh;
  mesh.cap = 1 << 17;
  auto found = gbv::find_stage(lam, q, 1.0, 1, mesh);
  REQUIRE(found.stage.has_value());
  CHECK(found.stage->n > 32768);
  CHECK(found.stage->n <= 65536);
  CHECK(found.stage->q_eval_n == 16);
  CHECK(found.stage->q_used == Catch::Approx(q.q(16)).epsilon(1e-14));
  CHECK(found.stage->ratio < 1.0 / 16.0);

  gbv::StageSearchOptions direct;
  direct.cap = 1 << 17;
  direct.q_eval = gbv::QEvalPoint::StageN;
  auto denied = gbv::find_stage(lam, q, 1.0, 1, direct);
  CHECK_FALSE(denied.stage.has_value());
  CHECK(denied.best_ratio > 0.5);

  CHECK(gbv::to_string(gbv::QEvalPoint::MeshIndex) == "mesh-index");
  CHECK(gbv::to_string(gbv::QEvalPoint::StageN) == "stage-n");
}

TEST_CASE("stage search argument validation", "[forge]") {
  auto lam = gbv::LambdaSequence::power(1.0);
  auto q1 = gbv::QSequence::constant(1.0);
  CHECK_THROWS_AS(gbv::find_stage(lam, q1, 1.0, 0), gbv::ArgumentError);
  CHECK_THROWS_AS(gbv::find_stage(lam, q1, 1.0, 59), gbv::ArgumentError);
  CHECK_THROWS_AS(gbv::find_stage(lam, q1, 0.5, 1), gbv::ArgumentError);
  CHECK_THROWS_AS(gbv::build_witness(lam, q1, 1.0, 0), gbv::ArgumentError);

  // duplicate stage indices are rejected by the witness container
  gbv::WitnessStage a, b;
  a.k = b.k = 1;
  a.n = b.n = 16;
  a.blocks = b.blocks = 2;
  CHECK_THROWS_AS(gbv::WitnessFunction({a, b}, 1.0), gbv::ArgumentError);
}

TEST_CASE("piece cap guards witness materialization", "[forge]") {
  auto lam = gbv::LambdaSequence::power(3.0);
  auto q1 = gbv::QSequence::constant(1.0);
  auto build = gbv::build_witness(lam, q1, 1.0, 1);
  REQUIRE(build.complete);
  CHECK_THROWS_AS(build.function.step_function(4), gbv::CapacityError);
  CHECK_THROWS_AS(build.function.stage_step_function(1, 4), gbv::CapacityError);
  CHECK_NOTHROW(build.function.step_function(64));
}
