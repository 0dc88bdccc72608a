#pragma once

// Strict JSON input formats. Unknown keys are rejected so typos fail loudly
// instead of silently running defaults.
//
// Weight sequences (lambda):
//   {"explicit": [1, 2, 4]}
//   {"family": "power", "alpha": 0.5}        lambda_i = i^alpha
//   {"family": "affine", "a": 1, "b": 0}     lambda_i = a*i + b
//
// Exponent sequences (q):
//   {"family": "constant", "q": 2}
//   {"family": "loglog", "c": 1, "n0": 4}    q(n) = max(1, c*log2(log2(n+n0)))
//   {"family": "linear", "a": 1, "b": 1}     q(n) = a*n + b, optional "q_cap"
//   {"explicit": [1, 1.5, 2], "limit": 2}    "limit" optional: number or "unbounded"
//
// Sampled functions:
//   {"resolution": 4, "samples": [0, 1, 0, 1]}            uniform 1-D grid
//   {"dims": [2, 3], "samples": [...]}                    row-major d-D grid
//   {"breakpoints": ["0", "1/3", "2/3"], "values": [...]} step function
//     (breakpoints are exact rationals: integers or "p/q" strings)

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gbv/errors.hpp"
#include "gbv/grid_function.hpp"
#include "gbv/rational.hpp"
#include "gbv/sequences.hpp"

namespace gbv {

namespace detail {

inline void check_keys(const nlohmann::json& j, std::initializer_list<const char*> allowed,
                       const std::string& what) {
  if (!j.is_object()) throw ArgumentError(what + ": expected a JSON object");
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw ArgumentError(what + ": unknown key \"" + key + "\"");
  }
}

inline double number_at(const nlohmann::json& j, const char* key, const std::string& what) {
  if (!j.contains(key)) throw ArgumentError(what + ": missing key \"" + key + "\"");
  if (!j.at(key).is_number()) throw ArgumentError(what + ": \"" + key + "\" must be a number");
  return j.at(key).get<double>();
}

inline std::vector<double> number_array_at(const nlohmann::json& j, const char* key,
                                           const std::string& what) {
  if (!j.contains(key)) throw ArgumentError(what + ": missing key \"" + key + "\"");
  if (!j.at(key).is_array())
    throw ArgumentError(what + ": \"" + key + "\" must be an array of numbers");
  std::vector<double> out;
  for (const auto& v : j.at(key)) {
    if (!v.is_number()) throw ArgumentError(what + ": \"" + key + "\" must hold numbers only");
    out.push_back(v.get<double>());
  }
  return out;
}

inline Rational parse_rational(const nlohmann::json& v, const std::string& what) {
  if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    const auto slash = s.find('/');
    try {
      if (slash == std::string::npos) return Rational(BigInt(s));
      const BigInt num(s.substr(0, slash));
      const BigInt den(s.substr(slash + 1));
      if (den == 0) throw ArgumentError(what + ": zero denominator in \"" + s + "\"");
      return Rational(num, den);
    } catch (const std::runtime_error&) {
      throw ArgumentError(what + ": cannot parse rational \"" + s + "\"");
    }
  }
  throw ArgumentError(what + ": breakpoints must be integers or \"p/q\" strings");
}

}  // namespace detail

inline LambdaSequence parse_lambda(const nlohmann::json& j) {
  const std::string what = "weight sequence";
  if (j.contains("explicit")) {
    detail::check_keys(j, {"explicit"}, what);
    return LambdaSequence::explicit_list(detail::number_array_at(j, "explicit", what));
  }
  detail::check_keys(j, {"family", "alpha", "a", "b"}, what);
  if (!j.contains("family")) throw ArgumentError(what + ": need \"explicit\" or \"family\"");
  const std::string family = j.at("family").get<std::string>();
  if (family == "power") {
    detail::check_keys(j, {"family", "alpha"}, what);
    return LambdaSequence::power(detail::number_at(j, "alpha", what));
  }
  if (family == "affine") {
    detail::check_keys(j, {"family", "a", "b"}, what);
    return LambdaSequence::affine(detail::number_at(j, "a", what),
                                  detail::number_at(j, "b", what));
  }
  throw ArgumentError(what + ": unknown family \"" + family + "\"");
}

inline QSequence parse_q(const nlohmann::json& j) {
  const std::string what = "exponent sequence";
  if (j.contains("explicit")) {
    detail::check_keys(j, {"explicit", "limit"}, what);
    auto values = detail::number_array_at(j, "explicit", what);
    if (j.contains("limit")) {
      const auto& l = j.at("limit");
      if (l.is_string() && l.get<std::string>() == "unbounded")
        return QSequence::explicit_list_unbounded(std::move(values));
      if (l.is_number()) return QSequence::explicit_list(std::move(values), l.get<double>());
      throw ArgumentError(what + ": \"limit\" must be a number or \"unbounded\"");
    }
    return QSequence::explicit_list(std::move(values));
  }
  detail::check_keys(j, {"family", "q", "c", "n0", "a", "b", "q_cap"}, what);
  if (!j.contains("family")) throw ArgumentError(what + ": need \"explicit\" or \"family\"");
  const std::string family = j.at("family").get<std::string>();
  if (family == "constant") {
    detail::check_keys(j, {"family", "q"}, what);
    return QSequence::constant(detail::number_at(j, "q", what));
  }
  if (family == "loglog") {
    detail::check_keys(j, {"family", "c", "n0"}, what);
    return QSequence::loglog(detail::number_at(j, "c", what),
                             detail::number_at(j, "n0", what));
  }
  if (family == "linear") {
    detail::check_keys(j, {"family", "a", "b", "q_cap"}, what);
    std::optional<double> cap;
    if (j.contains("q_cap")) cap = detail::number_at(j, "q_cap", what);
    return QSequence::linear(detail::number_at(j, "a", what), detail::number_at(j, "b", what),
                             cap);
  }
  throw ArgumentError(what + ": unknown family \"" + family + "\"");
}

inline bool looks_like_step_function(const nlohmann::json& j) {
  return j.is_object() && j.contains("breakpoints");
}

inline bool looks_like_grid_nd(const nlohmann::json& j) {
  return j.is_object() && j.contains("dims");
}

inline GridFunction1D parse_grid_1d(const nlohmann::json& j) {
  const std::string what = "sampled function";
  detail::check_keys(j, {"resolution", "samples"}, what);
  const double res_raw = detail::number_at(j, "resolution", what);
  const auto samples = detail::number_array_at(j, "samples", what);
  if (res_raw != std::floor(res_raw) || res_raw < 1)
    throw ArgumentError(what + ": \"resolution\" must be a positive integer");
  if (static_cast<std::size_t>(res_raw) != samples.size())
    throw ArgumentError(what + ": \"resolution\" must equal the sample count (got " +
                        std::to_string(static_cast<std::int64_t>(res_raw)) + " vs " +
                        std::to_string(samples.size()) + ")");
  return GridFunction1D(samples);
}

inline GridFunctionND parse_grid_nd(const nlohmann::json& j) {
  const std::string what = "multivariable sampled function";
  detail::check_keys(j, {"dims", "samples"}, what);
  if (!j.contains("dims") || !j.at("dims").is_array())
    throw ArgumentError(what + ": \"dims\" must be an array of positive integers");
  std::vector<int> dims;
  for (const auto& d : j.at("dims")) {
    if (!d.is_number_integer() || d.get<std::int64_t>() < 1 ||
        d.get<std::int64_t>() > (1 << 20))
      throw ArgumentError(what + ": \"dims\" must be an array of positive integers");
    dims.push_back(static_cast<int>(d.get<std::int64_t>()));
  }
  return GridFunctionND(dims, detail::number_array_at(j, "samples", what));
}

inline StepFunction1D parse_step_function(const nlohmann::json& j) {
  const std::string what = "step function";
  detail::check_keys(j, {"breakpoints", "values"}, what);
  if (!j.contains("breakpoints") || !j.at("breakpoints").is_array())
    throw ArgumentError(what + ": missing \"breakpoints\" array");
  std::vector<Rational> bps;
  for (const auto& b : j.at("breakpoints")) bps.push_back(detail::parse_rational(b, what));
  return StepFunction1D(std::move(bps), detail::number_array_at(j, "values", what));
}

/// Parse a file, or — when the argument itself starts with '{' — the inline
/// JSON text. Malformed input raises ArgumentError with nlohmann's
/// line/column diagnostics.
inline nlohmann::json load_json_argument(const std::string& path_or_inline) {
  std::string text;
  if (!path_or_inline.empty() && path_or_inline.front() == '{') {
    text = path_or_inline;
  } else {
    std::ifstream in(path_or_inline);
    if (!in) throw ArgumentError("cannot open file: " + path_or_inline);
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ArgumentError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace gbv
