#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include <gbv/gbv.hpp>

namespace {

std::vector<double> random_samples(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> v(static_cast<std::size_t>(n));
  for (auto& x : v) x = unif(rng);
  return v;
}

// Joint brute force for one axis: enumerate every nonoverlapping family of
// axis intervals together with an independent complementary tuple for each
// interval, evaluating the assigned objective from raw samples. Exercises
// the claim that per-interval tuple maximization commutes with the family
// search (linear, non-wrapping families).
double brute_axis_variation(const gbv::GridFunctionND& f, int axis,
                            const std::vector<double>& lambda, double p) {
  const int n = static_cast<int>(f.dims()[static_cast<std::size_t>(axis)]);
  const std::int64_t tuples = f.complement_count(axis);
  double best = 0.0;
  std::vector<std::pair<int, int>> family;

  auto evaluate = [&]() {
    std::vector<std::int64_t> pick(family.size(), 0);
    while (true) {
      std::vector<double> oscs;
      for (std::size_t i = 0; i < family.size(); ++i) {
        auto coords = gbv::detail::complement_coords(f, axis, pick[i]);
        coords[static_cast<std::size_t>(axis)] = family[i].first;
        const double va = f.at(coords);
        coords[static_cast<std::size_t>(axis)] = family[i].second;
        oscs.push_back(std::abs(f.at(coords) - va));
      }
      std::sort(oscs.begin(), oscs.end(), std::greater<double>());
      double inner = 0.0;
      for (std::size_t r = 0; r < oscs.size(); ++r)
        inner += std::pow(oscs[r], p) / lambda[r];
      best = std::max(best, inner > 0.0 ? std::pow(inner, 1.0 / p) : 0.0);
      // advance the mixed-radix tuple assignment
      std::size_t j = 0;
      while (j < pick.size() && ++pick[j] == tuples) pick[j++] = 0;
      if (j == pick.size()) break;
    }
  };

  auto rec = [&](auto&& self, int lo) -> void {
    if (family.size() >= lambda.size()) return;
    for (int a = lo; a < n; ++a)
      for (int b = a + 1; b <= n; ++b) {
        family.emplace_back(a, b);
        evaluate();
        self(self, b);
        family.pop_back();
      }
  };
  rec(rec, 0);
  return best;
}

}  // namespace

TEST_CASE("complement tuples and slices index the expected lines", "[multi]") {
  // f(x, y) = 10x + y on a 2 x 3 grid, row-major in (x, y)
  gbv::GridFunctionND f({2, 3}, {0, 1, 2, 10, 11, 12});
  CHECK(f.complement_count(0) == 3);
  CHECK(f.complement_count(1) == 2);

  for (std::int64_t t = 0; t < 3; ++t) {
    auto slice = gbv::detail::axis_slice(f, 0, t);
    REQUIRE(slice.size() == 2);
    CHECK(slice[0] == Catch::Approx(static_cast<double>(t)));
    CHECK(slice[1] == Catch::Approx(static_cast<double>(10 + t)));
  }
  auto row = gbv::detail::axis_slice(f, 1, 1);  // x = 1 line
  REQUIRE(row.size() == 3);
  CHECK(row[0] == 10.0);
  CHECK(row[2] == 12.0);

  CHECK(gbv::effective_oscillation(f, 0, 0, 1) == 10.0);
  CHECK(gbv::effective_oscillation(f, 1, 0, 2) == 2.0);
  CHECK(gbv::effective_oscillation(f, 1, 2, 3) == 2.0);  // wraps to index 0
  CHECK_THROWS_AS(gbv::effective_oscillation(f, 2, 0, 1), gbv::ArgumentError);
  CHECK_THROWS_AS(gbv::effective_oscillation(f, 0, 1, 4), gbv::ArgumentError);
}

TEST_CASE("separable sum splits into equal per-axis variations", "[multi]") {
  // f(x, y) = g(x) + g(y) with g = (0, 1)
  gbv::GridFunctionND f({2, 2}, {0.0, 1.0, 1.0, 2.0});
  auto lam = gbv::LambdaSequence::explicit_list({1.0, 2.0});
  auto res = gbv::lambda_sharp_variation(f, lam, 1.0);
  REQUIRE(res.per_axis.size() == 2);
  CHECK(res.per_axis[0].value == Catch::Approx(1.5).epsilon(1e-15));
  CHECK(res.per_axis[1].value == Catch::Approx(1.5).epsilon(1e-15));
  CHECK(res.total == Catch::Approx(3.0).epsilon(1e-15));

  auto g1d = gbv::lambda_p_variation(gbv::GridFunction1D({0.0, 1.0}), lam, 1.0);
  CHECK(res.total == Catch::Approx(2.0 * g1d.value).epsilon(1e-12));
}

TEST_CASE("single-axis grids reduce to the one-variable engine", "[multi]") {
  std::mt19937_64 rng(31);
  auto samples = random_samples(rng, 7);
  gbv::GridFunctionND f({7}, samples);
  auto lam = gbv::LambdaSequence::power(1.0);
  for (double p : {1.0, 2.0}) {
    auto multi = gbv::lambda_sharp_variation_axis(f, 0, lam, p);
    auto one = gbv::lambda_p_variation(gbv::GridFunction1D(samples), lam, p);
    CHECK(multi.value == Catch::Approx(one.value).margin(1e-14));
  }
}

TEST_CASE("axis engine agrees with the joint family-and-tuple brute force", "[multi]") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 12; ++trial) {
    const std::vector<int> dims = (trial % 2 == 0) ? std::vector<int>{3, 2}
                                                   : std::vector<int>{2, 2, 2};
    int total = 1;
    for (int d : dims) total *= d;
    gbv::GridFunctionND f(dims, random_samples(rng, total));
    std::vector<double> lam{1.0, 2.0, 4.0};
    const double p = (trial % 2 == 0) ? 1.0 : 2.0;
    for (int axis = 0; axis < static_cast<int>(dims.size()); ++axis) {
      auto engine = gbv::lambda_sharp_variation_axis(
          f, axis, gbv::LambdaSequence::explicit_list(lam), p);
      const double brute = brute_axis_variation(f, axis, lam, p);
      INFO("trial " << trial << " axis " << axis);
      CHECK(engine.value == Catch::Approx(brute).margin(1e-12));
    }
  }
}

TEST_CASE("axis transposition swaps the per-axis values", "[multi]") {
  std::mt19937_64 rng(123);
  auto samples = random_samples(rng, 6);  // 2 x 3, row-major (x, y)
  gbv::GridFunctionND f({2, 3}, samples);
  std::vector<double> transposed(6);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 3; ++y)
      transposed[static_cast<std::size_t>(y * 2 + x)] = samples[static_cast<std::size_t>(x * 3 + y)];
  gbv::GridFunctionND ft({3, 2}, transposed);

  auto lam = gbv::LambdaSequence::explicit_list({1.0, 2.0, 3.0});
  auto a = gbv::lambda_sharp_variation(f, lam, 1.5);
  auto b = gbv::lambda_sharp_variation(ft, lam, 1.5);
  CHECK(a.per_axis[0].value == Catch::Approx(b.per_axis[1].value).margin(1e-13));
  CHECK(a.per_axis[1].value == Catch::Approx(b.per_axis[0].value).margin(1e-13));
  CHECK(a.total == Catch::Approx(b.total).margin(1e-13));
}

TEST_CASE("axis partition variation of a one-axis function", "[multi]") {
  // f(x, y) = g(x): axis 1 sees constant slices, axis 0 reproduces bvq(g)
  std::mt19937_64 rng(8);
  auto g = random_samples(rng, 5);
  std::vector<double> samples;
  for (double v : g)
    for (int y = 0; y < 3; ++y) samples.push_back(v);
  gbv::GridFunctionND f({5, 3}, samples);
  auto q = gbv::QSequence::constant(2.0);

  auto axis1 = gbv::bvq_variation_axis(f, 1, q, 4);
  CHECK(axis1.value == 0.0);
  for (const auto& row : axis1.table) CHECK(row.value == 0.0);

  auto axis0 = gbv::bvq_variation_axis(f, 0, q, 4);
  auto plain = gbv::bvq_variation(gbv::GridFunction1D(g), q, 4);
  CHECK(axis0.value == Catch::Approx(plain.value).margin(1e-14));
  CHECK(axis0.best_n == plain.best_n);
  for (std::size_t i = 0; i < axis0.table.size(); ++i)
    CHECK(axis0.table[i].value == Catch::Approx(plain.table[i].value).margin(1e-14));

  auto all = gbv::bvq_variation_all_axes(f, q, 4);
  REQUIRE(all.per_axis.size() == 2);
  CHECK(all.total_max == Catch::Approx(plain.value).margin(1e-14));
}

TEST_CASE("shared-tuple axis rows equal the best per-tuple slice rows", "[multi]") {
  std::mt19937_64 rng(55);
  gbv::GridFunctionND f({4, 3}, random_samples(rng, 12));
  auto q = gbv::QSequence::constant(1.5);
  auto res = gbv::bvq_variation_axis(f, 0, q, 3);

  for (int n = 1; n <= 3; ++n) {
    double best = 0.0;
    std::int64_t best_t = 0;
    for (std::int64_t t = 0; t < f.complement_count(0); ++t) {
      auto slice = gbv::detail::axis_slice(f, 0, t);
      const double v =
          gbv::bvq_variation(gbv::GridFunction1D(slice), q, n).table.back().value;
      if (v > best) {
        best = v;
        best_t = t;
      }
    }
    const auto& row = res.table[static_cast<std::size_t>(n - 1)];
    INFO("n = " << n);
    CHECK(row.value == Catch::Approx(best).margin(1e-14));
    CHECK(row.best_tuple == best_t);
  }

  // witness slice partition reproduces the winning value
  if (!res.witness.intervals.empty()) {
    const double qn = res.table[static_cast<std::size_t>(res.best_n - 1)].q_n;
    double sum = 0.0;
    for (double o : res.witness.oscillations) sum += std::pow(o, qn);
    CHECK(std::pow(sum, 1.0 / qn) == Catch::Approx(res.value).epsilon(1e-12));
  }
}

TEST_CASE("multivariable argument validation", "[multi]") {
  gbv::GridFunctionND f({2, 2}, {0.0, 1.0, 2.0, 3.0});
  auto lam = gbv::LambdaSequence::power(0.0);
  CHECK_THROWS_AS(gbv::lambda_sharp_variation_axis(f, 2, lam, 1.0), gbv::ArgumentError);
  CHECK_THROWS_AS(gbv::lambda_sharp_variation_axis(f, -1, lam, 1.0), gbv::ArgumentError);
  CHECK_THROWS_AS(gbv::bvq_variation_axis(f, 3, gbv::QSequence::constant(1.0), 2),
                  gbv::ArgumentError);
  gbv::BvqOptions tiny;
  tiny.size_cap = 1;
  CHECK_THROWS_AS(gbv::bvq_variation_axis(f, 0, gbv::QSequence::constant(1.0), 2, tiny),
                  gbv::CapacityError);
}
