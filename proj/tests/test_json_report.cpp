#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <string>

#include <catch2/catch_amalgamated.hpp>

#include <gbv/gbv.hpp>

using nlohmann::json;

TEST_CASE("weight sequence parsing", "[jsonio]") {
  auto lam = gbv::parse_lambda(json::parse(R"({"explicit": [1, 2, 4]})"));
  CHECK(lam.lambda(3) == 4.0);
  CHECK(lam.max_index() == 3);

  auto pw = gbv::parse_lambda(json::parse(R"({"family": "power", "alpha": 1.5})"));
  CHECK(pw.lambda(4) == Catch::Approx(8.0).epsilon(1e-14));

  auto af = gbv::parse_lambda(json::parse(R"({"family": "affine", "a": 2, "b": 1})"));
  CHECK(af.lambda(3) == Catch::Approx(7.0).epsilon(1e-14));

  CHECK_THROWS_AS(gbv::parse_lambda(json::parse(R"({"family": "zeta"})")),
                  gbv::ArgumentError);
  CHECK_THROWS_AS(gbv::parse_lambda(json::parse(R"({"alpha": 1})")), gbv::ArgumentError);
  // unknown keys are rejected, not ignored
  CHECK_THROWS_AS(gbv::parse_lambda(json::parse(R"({"explicit": [1], "typo": 1})")),
                  gbv::ArgumentError);
  CHECK_THROWS_AS(
      gbv::parse_lambda(json::parse(R"({"family": "power", "alpha": 1, "b": 2})")),
      gbv::ArgumentError);
  // family validation still applies underneath
  CHECK_THROWS_AS(gbv::parse_lambda(json::parse(R"({"explicit": [2, 1]})")),
                  gbv::ConstructionError);
}

TEST_CASE("exponent sequence parsing", "[jsonio]") {
  auto qc = gbv::parse_q(json::parse(R"({"family": "constant", "q": 2})"));
  CHECK(qc.q(7) == 2.0);
  CHECK(qc.limit() == 2.0);

  auto ql = gbv::parse_q(json::parse(R"({"family": "loglog", "c": 1, "n0": 3})"));
  CHECK(ql.q(1) == Catch::Approx(1.0));
  CHECK(ql.unbounded());

  auto qlin = gbv::parse_q(json::parse(R"({"family": "linear", "a": 1, "b": 1, "q_cap": 6})"));
  CHECK(qlin.q(3) == 4.0);
  CHECK(qlin.q(50) == 6.0);
  CHECK(qlin.limit() == 6.0);

  auto qe = gbv::parse_q(json::parse(R"({"explicit": [1, 1.5, 2]})"));
  CHECK(qe.q(2) == 1.5);
  CHECK(qe.q(9) == 2.0);  // continues with the last value
  CHECK(qe.limit() == 2.0);

  auto qe2 = gbv::parse_q(json::parse(R"({"explicit": [1, 2], "limit": 3})"));
  CHECK(qe2.limit() == 3.0);
  auto qe3 = gbv::parse_q(json::parse(R"({"explicit": [1, 2], "limit": "unbounded"})"));
  CHECK(qe3.unbounded());

  CHECK_THROWS_AS(gbv::parse_q(json::parse(R"({"explicit": [1, 2], "limit": "bogus"})")),
                  gbv::ArgumentError);
  CHECK_THROWS_AS(gbv::parse_q(json::parse(R"({"explicit": [1, 2], "limit": 1.5})")),
                  gbv::ConstructionError);  // limit below the last value
  CHECK_THROWS_AS(gbv::parse_q(json::parse(R"({"family": "constant", "q": 0.5})")),
                  gbv::ConstructionError);
  CHECK_THROWS_AS(gbv::parse_q(json::parse(R"({"family": "constant", "w": 2})")),
                  gbv::ArgumentError);
}

TEST_CASE("function input parsing", "[jsonio]") {
  auto g = gbv::parse_grid_1d(json::parse(R"({"resolution": 3, "samples": [0, 1, 0.5]})"));
  CHECK(g.n() == 3);
  CHECK(g.at(4) == 1.0);
  CHECK_THROWS_AS(gbv::parse_grid_1d(json::parse(R"({"resolution": 4, "samples": [0, 1]})")),
                  gbv::ArgumentError);

  auto nd = gbv::parse_grid_nd(json::parse(R"({"dims": [2, 2], "samples": [0, 1, 2, 3]})"));
  CHECK(nd.dim() == 2);
  CHECK(gbv::detail::axis_slice(nd, 1, 1)[1] == 3.0);
  CHECK_THROWS_AS(gbv::parse_grid_nd(json::parse(R"({"dims": [2, 0], "samples": []})")),
                  gbv::ArgumentError);
  CHECK_THROWS_AS(gbv::parse_grid_nd(json::parse(R"({"dims": [2.5], "samples": [0, 1]})")),
                  gbv::ArgumentError);

  auto st = gbv::parse_step_function(
      json::parse(R"({"breakpoints": [0, "1/3", "2/3"], "values": [1, 0, 0.5]})"));
  CHECK(st.pieces() == 3);
  CHECK(st.value_at(gbv::Rational(1, 2)) == 0.0);
  CHECK(st.value_at(gbv::Rational(5, 6)) == 0.5);
  CHECK_THROWS_AS(gbv::parse_step_function(
                      json::parse(R"({"breakpoints": ["1/0"], "values": [1]})")),
                  gbv::ArgumentError);
  CHECK_THROWS_AS(gbv::parse_step_function(
                      json::parse(R"({"breakpoints": ["x"], "values": [1]})")),
                  gbv::ArgumentError);

  CHECK(gbv::looks_like_step_function(json::parse(R"({"breakpoints": []})")));
  CHECK_FALSE(gbv::looks_like_step_function(json::parse(R"({"samples": []})")));
  CHECK(gbv::looks_like_grid_nd(json::parse(R"({"dims": [2]})")));
}

TEST_CASE("inline and file JSON arguments", "[jsonio]") {
  auto j = gbv::load_json_argument(R"({"resolution": 2, "samples": [0, 1]})");
  CHECK(j.at("resolution") == 2);

  const std::string path = "gbv_test_input.json";
  {
    std::ofstream out(path);
    out << R"({"family": "power", "alpha": 1})";
  }
  auto jf = gbv::load_json_argument(path);
  CHECK(jf.at("family") == "power");
  std::remove(path.c_str());

  CHECK_THROWS_AS(gbv::load_json_argument("no_such_file.json"), gbv::ArgumentError);
  CHECK_THROWS_WITH(gbv::load_json_argument("{bad json"),
                    Catch::Matchers::ContainsSubstring("malformed JSON"));
}

TEST_CASE("shortest round-trip double formatting", "[report]") {
  CHECK(gbv::format_double(1.5) == "1.5");
  CHECK(gbv::format_double(2.0) == "2.0");
  CHECK(gbv::format_double(-0.0) == "-0.0");
  CHECK(gbv::format_double(0.1) == "0.1");
  CHECK(gbv::format_double(1.0 / 3.0) == "0.3333333333333333");
  CHECK(gbv::format_double(1e300) == "1e+300");
  CHECK(gbv::format_double(std::numeric_limits<double>::infinity()) == "1e9999");
  CHECK(gbv::format_double(-std::numeric_limits<double>::infinity()) == "-1e9999");
  CHECK(gbv::format_double(std::nan("")) == "null");
  // round-trip property on awkward values (from_chars accepts subnormals,
  // which std::stod rejects with out_of_range)
  for (double v : {0.30000000000000004, 5e-324, 1.7976931348623157e308}) {
    const std::string s = gbv::format_double(v);
    double back = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), back);
    CHECK(ec == std::errc());
    CHECK(ptr == s.data() + s.size());
    CHECK(back == v);
  }
}

TEST_CASE("report values dump deterministically in insertion order", "[report]") {
  auto arr = gbv::ReportValue::array();
  arr.push(gbv::ReportValue::integer(1)).push(gbv::ReportValue::number(0.5));
  auto obj = gbv::ReportValue::object();
  obj.set("zeta", gbv::ReportValue::string("last?\nno"))
      .set("alpha", gbv::ReportValue::boolean(true))
      .set("items", std::move(arr))
      .set("nada", gbv::ReportValue::null())
      .set("empty", gbv::ReportValue::object());

  const std::string expected =
      "{\n"
      "  \"zeta\": \"last?\\nno\",\n"
      "  \"alpha\": true,\n"
      "  \"items\": [\n"
      "    1,\n"
      "    0.5\n"
      "  ],\n"
      "  \"nada\": null,\n"
      "  \"empty\": {}\n"
      "}\n";
  CHECK(obj.dump() == expected);
  CHECK(obj.dump() == obj.dump());

  // non-finite numbers degrade to null rather than invalid JSON
  auto bad = gbv::ReportValue::object();
  bad.set("inf", gbv::ReportValue::number(std::numeric_limits<double>::infinity()));
  CHECK(bad.dump() == "{\n  \"inf\": null\n}\n");
}

TEST_CASE("csv writer quotes and formats consistently", "[report]") {
  gbv::CsvWriter w({"n", "value", "note"});
  w.add_row({gbv::CsvWriter::cell(1), gbv::CsvWriter::cell(0.5), "plain"});
  w.add_row({gbv::CsvWriter::cell(2), gbv::CsvWriter::cell(2.0), "with, comma"});
  w.add_row({gbv::CsvWriter::cell(std::int64_t{3}), gbv::CsvWriter::cell(true), "say \"hi\""});
  CHECK(w.str() ==
        "n,value,note\n"
        "1,0.5,plain\n"
        "2,2.0,\"with, comma\"\n"
        "3,true,\"say \"\"hi\"\"\"\n");
  CHECK_THROWS_AS(w.add_row({"only", "two"}), gbv::ArgumentError);
  CHECK_THROWS_AS(gbv::CsvWriter(std::vector<std::string>{}), gbv::ArgumentError);
}
