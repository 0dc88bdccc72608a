// gbv: command-line front end for the generalized bounded-variation library.
//
// Subcommands
//   variation   family variation of a sampled or step function
//   bvq         mesh-indexed partition variation of a sampled function
//   multivar    axis variations of a d-variable sample grid
//   criterion   inclusion criterion scan M(n) with growth verdict
//   extremal    closed-form ordered constrained maximization
//   forge       counterexample construction and verification
//   config      echo version, defaults, and accepted input formats
//
// Reports are deterministic JSON on stdout (or --out FILE; a .csv suffix
// selects CSV for the tabular commands). --lambda/--q/--input accept either a
// file path or inline JSON (text starting with '{').
//
// Exit codes: 0 success, 1 bad arguments or malformed input, 2 a capacity
// guard tripped, 3 a verification check failed.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gbv/gbv.hpp"

namespace {

using gbv::ReportValue;

std::string wrap_name(gbv::WrapMode w) { return w == gbv::WrapMode::On ? "on" : "off"; }

ReportValue report_header(const std::string& command) {
  auto r = ReportValue::object();
  r.set("tool", ReportValue::string("gbv"));
  r.set("version", ReportValue::string(std::string(gbv::kVersion)));
  r.set("command", ReportValue::string(command));
  return r;
}

ReportValue family_json(const gbv::IntervalFamily& fam) {
  auto arr = ReportValue::array();
  for (std::size_t i = 0; i < fam.intervals.size(); ++i) {
    auto iv = ReportValue::object();
    iv.set("a", ReportValue::integer(fam.intervals[i].a));
    iv.set("b", ReportValue::integer(fam.intervals[i].b));
    iv.set("oscillation", ReportValue::number(fam.oscillations[i]));
    arr.push(std::move(iv));
  }
  auto obj = ReportValue::object();
  obj.set("intervals", std::move(arr));
  return obj;
}

ReportValue strings_json(const std::vector<std::string>& notes) {
  auto arr = ReportValue::array();
  for (const auto& s : notes) arr.push(ReportValue::string(s));
  return arr;
}

ReportValue validation_json(const gbv::ValidationReport& rep) {
  auto arr = ReportValue::array();
  for (const auto& issue : rep.issues) {
    auto o = ReportValue::object();
    o.set("severity", ReportValue::string(
                          issue.severity == gbv::IssueSeverity::Violation ? "violation"
                                                                          : "warning"));
    o.set("message", ReportValue::string(issue.message));
    arr.push(std::move(o));
  }
  return arr;
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw gbv::ArgumentError("cannot open output file: " + out_path);
  out << text;
}

bool csv_requested(const std::string& out_path) {
  return out_path.size() > 4 && out_path.substr(out_path.size() - 4) == ".csv";
}

// ---------------------------------------------------------------------------

struct VariationArgs {
  std::string input, lambda, out;
  double p = 1.0;
  std::string strategy = "exact";
  bool wrap = false;
  int exact_cap = 14;
  bool verify = false;
};

int run_variation(const VariationArgs& a) {
  const auto input = gbv::load_json_argument(a.input);
  const auto lambda = gbv::parse_lambda(gbv::load_json_argument(a.lambda));
  gbv::VariationOptions opts;
  opts.strategy = a.strategy == "heuristic" ? gbv::Strategy::Heuristic : gbv::Strategy::Exact;
  opts.wrap = a.wrap ? gbv::WrapMode::On : gbv::WrapMode::Off;
  opts.exact_cap = a.exact_cap;

  gbv::VariationResult res;
  int n_points = 0;
  if (gbv::looks_like_step_function(input)) {
    const auto f = gbv::parse_step_function(input);
    n_points = static_cast<int>(f.linear_piece_values().size());
    res = gbv::lambda_p_variation(f, lambda, a.p, opts);
  } else {
    const auto f = gbv::parse_grid_1d(input);
    n_points = f.n();
    res = gbv::lambda_p_variation(f, lambda, a.p, opts);
  }

  if (a.verify) {
    const double check = gbv::assigned_objective(res.witness.oscillations, lambda, a.p);
    if (std::abs(check - res.value) > 1e-12 * std::max(1.0, std::abs(res.value)))
      throw gbv::VerificationError("witness family does not reproduce the reported value");
  }

  auto r = report_header("variation");
  auto inputs = ReportValue::object();
  inputs.set("n", ReportValue::integer(n_points));
  inputs.set("lambda", ReportValue::string(lambda.describe()));
  inputs.set("p", ReportValue::number(a.p));
  inputs.set("strategy", ReportValue::string(a.strategy));
  inputs.set("wrap", ReportValue::string(wrap_name(opts.wrap)));
  r.set("inputs", std::move(inputs));
  r.set("value", ReportValue::number(res.value));
  r.set("exact", ReportValue::boolean(res.exact));
  r.set("witness", family_json(res.witness));
  if (a.verify) r.set("verified", ReportValue::boolean(true));
  write_output(r.dump(), a.out);
  return 0;
}

// ---------------------------------------------------------------------------

struct BvqArgs {
  std::string input, q, out;
  int n_max = 8;
  bool no_wrap = false;
  int size_cap = 256;
};

int run_bvq(const BvqArgs& a) {
  const auto f = gbv::parse_grid_1d(gbv::load_json_argument(a.input));
  const auto q = gbv::parse_q(gbv::load_json_argument(a.q));
  gbv::BvqOptions opts;
  opts.wrap = a.no_wrap ? gbv::WrapMode::Off : gbv::WrapMode::On;
  opts.size_cap = a.size_cap;
  const auto res = gbv::bvq_variation(f, q, a.n_max, opts);

  if (csv_requested(a.out)) {
    gbv::CsvWriter csv({"n", "q_n", "mesh", "clamped", "value"});
    for (const auto& row : res.table)
      csv.add_row({gbv::CsvWriter::cell(row.n), gbv::CsvWriter::cell(row.q_n),
                   gbv::CsvWriter::cell(row.mesh), gbv::CsvWriter::cell(row.clamped),
                   gbv::CsvWriter::cell(row.value)});
    write_output(csv.str(), a.out);
    return 0;
  }

  auto r = report_header("bvq");
  auto inputs = ReportValue::object();
  inputs.set("n", ReportValue::integer(f.n()));
  inputs.set("q", ReportValue::string(q.describe()));
  inputs.set("n_max", ReportValue::integer(a.n_max));
  inputs.set("wrap", ReportValue::string(wrap_name(opts.wrap)));
  r.set("inputs", std::move(inputs));
  r.set("value", ReportValue::number(res.value));
  r.set("best_n", ReportValue::integer(res.best_n));
  auto table = ReportValue::array();
  for (const auto& row : res.table) {
    auto o = ReportValue::object();
    o.set("n", ReportValue::integer(row.n));
    o.set("q_n", ReportValue::number(row.q_n));
    o.set("mesh", ReportValue::number(row.mesh));
    o.set("clamped", ReportValue::boolean(row.clamped));
    o.set("value", ReportValue::number(row.value));
    table.push(std::move(o));
  }
  r.set("table", std::move(table));
  r.set("witness", family_json(res.witness));
  r.set("notes", strings_json(res.notes));
  write_output(r.dump(), a.out);
  return 0;
}

// ---------------------------------------------------------------------------

struct MultivarArgs {
  std::string input, mode, lambda, q, out;
  double p = 1.0;
  int n_max = 8;
  int axis = -1;  // -1: all axes
  std::string strategy = "exact";
  bool wrap = false;
  int exact_cap = 14;
  int size_cap = 256;
};

int run_multivar(const MultivarArgs& a) {
  const auto f = gbv::parse_grid_nd(gbv::load_json_argument(a.input));
  auto r = report_header("multivar");
  auto inputs = ReportValue::object();
  auto dims = ReportValue::array();
  for (int d : f.dims()) dims.push(ReportValue::integer(d));
  inputs.set("dims", std::move(dims));
  inputs.set("mode", ReportValue::string(a.mode));

  if (a.mode == "sharp") {
    if (a.lambda.empty()) throw gbv::ArgumentError("multivar sharp mode needs --lambda");
    const auto lambda = gbv::parse_lambda(gbv::load_json_argument(a.lambda));
    gbv::VariationOptions opts;
    opts.strategy =
        a.strategy == "heuristic" ? gbv::Strategy::Heuristic : gbv::Strategy::Exact;
    opts.wrap = a.wrap ? gbv::WrapMode::On : gbv::WrapMode::Off;
    opts.exact_cap = a.exact_cap;
    inputs.set("lambda", ReportValue::string(lambda.describe()));
    inputs.set("p", ReportValue::number(a.p));
    inputs.set("strategy", ReportValue::string(a.strategy));
    inputs.set("wrap", ReportValue::string(wrap_name(opts.wrap)));
    r.set("inputs", std::move(inputs));

    auto axes = ReportValue::array();
    double total = 0.0;
    for (int axis = 0; axis < f.dim(); ++axis) {
      if (a.axis >= 0 && axis != a.axis) continue;
      const auto res = gbv::lambda_sharp_variation_axis(f, axis, lambda, a.p, opts);
      total += res.value;
      auto o = ReportValue::object();
      o.set("axis", ReportValue::integer(axis));
      o.set("value", ReportValue::number(res.value));
      o.set("exact", ReportValue::boolean(res.exact));
      o.set("witness", family_json(res.witness));
      axes.push(std::move(o));
    }
    if (a.axis < 0) r.set("total", ReportValue::number(total));
    r.set("axes", std::move(axes));
    write_output(r.dump(), a.out);
    return 0;
  }

  if (a.mode != "bvq") throw gbv::ArgumentError("multivar: --mode must be sharp or bvq");
  if (a.q.empty()) throw gbv::ArgumentError("multivar bvq mode needs --q");
  const auto q = gbv::parse_q(gbv::load_json_argument(a.q));
  gbv::BvqOptions opts;
  opts.wrap = gbv::WrapMode::On;
  opts.size_cap = a.size_cap;
  inputs.set("q", ReportValue::string(q.describe()));
  inputs.set("n_max", ReportValue::integer(a.n_max));
  r.set("inputs", std::move(inputs));

  auto axes = ReportValue::array();
  for (int axis = 0; axis < f.dim(); ++axis) {
    if (a.axis >= 0 && axis != a.axis) continue;
    const auto res = gbv::bvq_variation_axis(f, axis, q, a.n_max, opts);
    auto o = ReportValue::object();
    o.set("axis", ReportValue::integer(axis));
    o.set("value", ReportValue::number(res.value));
    o.set("best_n", ReportValue::integer(res.best_n));
    o.set("best_tuple", ReportValue::integer(res.best_tuple));
    auto table = ReportValue::array();
    for (const auto& row : res.table) {
      auto t = ReportValue::object();
      t.set("n", ReportValue::integer(row.n));
      t.set("q_n", ReportValue::number(row.q_n));
      t.set("mesh", ReportValue::number(row.mesh));
      t.set("clamped", ReportValue::boolean(row.clamped));
      t.set("value", ReportValue::number(row.value));
      t.set("best_tuple", ReportValue::integer(row.best_tuple));
      table.push(std::move(t));
    }
    o.set("table", std::move(table));
    o.set("witness", family_json(res.witness));
    axes.push(std::move(o));
  }
  r.set("axes", std::move(axes));
  write_output(r.dump(), a.out);
  return 0;
}

// ---------------------------------------------------------------------------

struct CriterionArgs {
  std::string lambda, q, out;
  double p = 1.0;
  int n_max = 16;
  std::string k_range = "2n";
  double growth_factor = 2.0;
  std::int64_t k_cap = std::int64_t{1} << 22;
};

int run_criterion(const CriterionArgs& a) {
  const auto lambda = gbv::parse_lambda(gbv::load_json_argument(a.lambda));
  const auto q = gbv::parse_q(gbv::load_json_argument(a.q));
  gbv::ScanOptions opts;
  if (a.k_range == "n")
    opts.k_range = gbv::KRange::UpToN;
  else if (a.k_range == "2n")
    opts.k_range = gbv::KRange::UpTo2PowN;
  else
    throw gbv::ArgumentError("criterion: --k-range must be n or 2n");
  opts.growth_factor = a.growth_factor;
  opts.k_cap = a.k_cap;
  const auto validation = gbv::validate_sequences(lambda, q);
  const auto scan = gbv::criterion_scan(lambda, q, a.p, a.n_max, opts);

  if (csv_requested(a.out)) {
    gbv::CsvWriter csv({"n", "q_n", "m", "argmax_k", "running_max"});
    for (const auto& row : scan.rows)
      csv.add_row({gbv::CsvWriter::cell(row.n), gbv::CsvWriter::cell(row.q_n),
                   gbv::CsvWriter::cell(row.m), gbv::CsvWriter::cell(row.argmax_k),
                   gbv::CsvWriter::cell(row.running_max)});
    write_output(csv.str(), a.out);
    return 0;
  }

  auto r = report_header("criterion");
  auto inputs = ReportValue::object();
  inputs.set("lambda", ReportValue::string(lambda.describe()));
  inputs.set("q", ReportValue::string(q.describe()));
  inputs.set("p", ReportValue::number(a.p));
  inputs.set("n_max", ReportValue::integer(a.n_max));
  inputs.set("k_range", ReportValue::string(a.k_range == "n" ? "up to n" : "up to 2^n"));
  inputs.set("growth_factor", ReportValue::number(a.growth_factor));
  r.set("inputs", std::move(inputs));
  auto rows = ReportValue::array();
  for (const auto& row : scan.rows) {
    auto o = ReportValue::object();
    o.set("n", ReportValue::integer(row.n));
    o.set("q_n", ReportValue::number(row.q_n));
    o.set("m", ReportValue::number(row.m));
    o.set("argmax_k", ReportValue::integer(row.argmax_k));
    o.set("running_max", ReportValue::number(row.running_max));
    rows.push(std::move(o));
  }
  r.set("rows", std::move(rows));
  r.set("verdict", ReportValue::string(gbv::to_string(scan.verdict)));
  auto growth = ReportValue::object();
  growth.set("running_max_end", ReportValue::number(scan.running_max_end));
  growth.set("running_max_ref", ReportValue::number(scan.running_max_ref));
  growth.set("n_ref", ReportValue::integer(scan.n_ref));
  growth.set("factor", ReportValue::number(scan.growth_factor));
  r.set("growth", std::move(growth));
  r.set("validation", validation_json(validation));
  write_output(r.dump(), a.out);
  return 0;
}

// ---------------------------------------------------------------------------

struct ExtremalArgs {
  std::string lambda, out;
  double q = 1.0;
  std::int64_t n = 1;
  std::int64_t verify_trials = 0;
  std::uint64_t seed = 20260817;
};

int run_extremal(const ExtremalArgs& a) {
  const auto lambda = gbv::parse_lambda(gbv::load_json_argument(a.lambda));
  const auto res = gbv::solve_extremal(lambda, a.q, a.n);

  auto r = report_header("extremal");
  auto inputs = ReportValue::object();
  inputs.set("lambda", ReportValue::string(lambda.describe()));
  inputs.set("q", ReportValue::number(a.q));
  inputs.set("n", ReportValue::integer(a.n));
  r.set("inputs", std::move(inputs));
  r.set("k_star", ReportValue::integer(res.k_star));
  r.set("value", ReportValue::number(res.value));
  r.set("x_value", ReportValue::number(res.x_value));
  auto kset = ReportValue::array();
  for (auto k : res.optimal_k_set) kset.push(ReportValue::integer(k));
  r.set("optimal_k_set", std::move(kset));
  if (!res.candidate_values.empty()) {
    auto cand = ReportValue::array();
    for (double v : res.candidate_values) cand.push(ReportValue::number(v));
    r.set("candidate_values", std::move(cand));
  }
  if (!res.notes.empty()) r.set("notes", strings_json(res.notes));

  bool failed = false;
  if (a.verify_trials > 0) {
    const auto ver =
        gbv::verify_vertex_optimality(lambda, a.q, a.n, a.verify_trials, a.seed);
    auto v = ReportValue::object();
    v.set("trials", ReportValue::integer(ver.trials));
    v.set("vertex_value", ReportValue::number(ver.vertex_value));
    v.set("max_sample_value", ReportValue::number(ver.max_sample_value));
    v.set("worst_violation", ReportValue::number(ver.worst_violation));
    v.set("ok", ReportValue::boolean(ver.ok));
    r.set("verification", std::move(v));
    failed = !ver.ok;
  }
  write_output(r.dump(), a.out);
  if (failed)
    throw gbv::VerificationError("a sampled feasible point beat the closed-form optimum");
  return 0;
}

// ---------------------------------------------------------------------------

struct ForgeArgs {
  std::string lambda, q, out;
  double p = 1.0;
  int stages = 1;
  std::int64_t cap = std::int64_t{1} << 20;
  bool geometric = false;
  std::string q_eval = "mesh";
};

int run_forge(const ForgeArgs& a) {
  const auto lambda = gbv::parse_lambda(gbv::load_json_argument(a.lambda));
  const auto q = gbv::parse_q(gbv::load_json_argument(a.q));
  gbv::StageSearchOptions opts;
  opts.cap = a.cap;
  opts.geometric = a.geometric;
  if (a.q_eval == "mesh")
    opts.q_eval = gbv::QEvalPoint::MeshIndex;
  else if (a.q_eval == "stage")
    opts.q_eval = gbv::QEvalPoint::StageN;
  else
    throw gbv::ArgumentError("forge: --q-eval must be mesh or stage");

  const auto validation = gbv::validate_sequences(lambda, q);
  const auto build = gbv::build_witness(lambda, q, a.p, a.stages, opts);

  auto r = report_header("forge");
  auto inputs = ReportValue::object();
  inputs.set("lambda", ReportValue::string(lambda.describe()));
  inputs.set("q", ReportValue::string(q.describe()));
  inputs.set("p", ReportValue::number(a.p));
  inputs.set("stages", ReportValue::integer(a.stages));
  inputs.set("cap", ReportValue::integer(a.cap));
  inputs.set("geometric", ReportValue::boolean(a.geometric));
  inputs.set("q_eval", ReportValue::string(gbv::to_string(opts.q_eval)));
  r.set("inputs", std::move(inputs));
  r.set("complete", ReportValue::boolean(build.complete));

  auto searches = ReportValue::array();
  for (std::size_t i = 0; i < build.searches.size(); ++i) {
    const auto& s = build.searches[i];
    auto o = ReportValue::object();
    o.set("k", ReportValue::integer(static_cast<std::int64_t>(i) + 1));
    o.set("found", ReportValue::boolean(s.stage.has_value()));
    o.set("candidates_tried", ReportValue::integer(s.candidates_tried));
    o.set("best_ratio", ReportValue::number(s.best_ratio));
    o.set("best_ratio_log2", ReportValue::number(s.best_ratio_log2));
    o.set("best_ratio_n", ReportValue::integer(s.best_ratio_n));
    o.set("threshold_log2", ReportValue::number(s.threshold_log2));
    searches.push(std::move(o));
  }
  r.set("searches", std::move(searches));

  auto stages = ReportValue::array();
  for (const auto& st : build.function.stages()) {
    auto o = ReportValue::object();
    o.set("k", ReportValue::integer(st.k));
    o.set("n", ReportValue::integer(st.n));
    o.set("m", ReportValue::integer(st.m));
    o.set("s", ReportValue::integer(st.s));
    o.set("blocks", ReportValue::integer(st.blocks));
    o.set("s_m", ReportValue::number(st.s_m));
    o.set("phi", ReportValue::number(st.phi));
    o.set("amplitude", ReportValue::number(st.amplitude));
    o.set("ratio", ReportValue::number(st.ratio));
    o.set("q_eval_n", ReportValue::integer(st.q_eval_n));
    o.set("q_used", ReportValue::number(st.q_used));
    stages.push(std::move(o));
  }
  r.set("stages", std::move(stages));

  if (!build.function.stages().empty()) {
    const auto norm = gbv::witness_norm_bound(build.function, lambda, a.p);
    auto narr = ReportValue::array();
    for (const auto& sn : norm.stages) {
      auto o = ReportValue::object();
      o.set("k", ReportValue::integer(sn.k));
      o.set("norm", ReportValue::number(sn.norm));
      o.set("bound", ReportValue::number(sn.bound));
      o.set("within", ReportValue::boolean(sn.within));
      narr.push(std::move(o));
    }
    auto nrep = ReportValue::object();
    nrep.set("stages", std::move(narr));
    nrep.set("norm_sum", ReportValue::number(norm.norm_sum));
    nrep.set("bound_sum", ReportValue::number(norm.bound_sum));
    nrep.set("within_bound", ReportValue::boolean(norm.within_bound));
    r.set("norm", std::move(nrep));

    const auto div = gbv::witness_divergence_check(build.function);
    auto darr = ReportValue::array();
    for (const auto& sd : div.stages) {
      auto o = ReportValue::object();
      o.set("k", ReportValue::integer(sd.k));
      o.set("n_mesh", ReportValue::integer(sd.n_mesh));
      o.set("q_used", ReportValue::number(sd.q_used));
      o.set("value_log2", ReportValue::number(sd.value_log2));
      o.set("value", ReportValue::number(sd.value));
      o.set("threshold_log2", ReportValue::number(sd.threshold_log2));
      o.set("ok", ReportValue::boolean(sd.ok));
      o.set("branch", ReportValue::string(sd.branch));
      darr.push(std::move(o));
    }
    auto drep = ReportValue::object();
    drep.set("stages", std::move(darr));
    drep.set("all_ok", ReportValue::boolean(div.all_ok));
    r.set("divergence", std::move(drep));
    r.set("total_blocks", ReportValue::integer(build.function.total_blocks()));
  }
  r.set("validation", validation_json(validation));
  write_output(r.dump(), a.out);
  return 0;
}

// ---------------------------------------------------------------------------

int run_config(const std::string& out) {
  auto r = report_header("config");
  const char* threads_env = std::getenv("GBV_THREADS");
  auto defaults = ReportValue::object();
  defaults.set("variation_strategy", ReportValue::string("exact"));
  defaults.set("variation_wrap", ReportValue::string("off"));
  defaults.set("variation_exact_cap", ReportValue::integer(14));
  defaults.set("bvq_wrap", ReportValue::string("on"));
  defaults.set("bvq_size_cap", ReportValue::integer(256));
  defaults.set("criterion_k_range", ReportValue::string("up to 2^n"));
  defaults.set("criterion_k_cap", ReportValue::integer(std::int64_t{1} << 22));
  defaults.set("criterion_growth_factor", ReportValue::number(2.0));
  defaults.set("forge_cap", ReportValue::integer(std::int64_t{1} << 20));
  defaults.set("forge_q_eval", ReportValue::string("mesh-index"));
  defaults.set("threads",
               ReportValue::integer(threads_env ? std::atoll(threads_env) : 1));
  r.set("defaults", std::move(defaults));
  auto formats = ReportValue::object();
  formats.set("lambda", ReportValue::string(
                            R"({"explicit":[...]} | {"family":"power","alpha":a} | )"
                            R"({"family":"affine","a":a,"b":b})"));
  formats.set("q", ReportValue::string(
                       R"({"family":"constant","q":q} | {"family":"loglog","c":c,"n0":n0} | )"
                       R"({"family":"linear","a":a,"b":b,"q_cap":c?} | )"
                       R"({"explicit":[...],"limit":L|"unbounded"})"));
  formats.set("grid_1d", ReportValue::string(R"({"resolution":N,"samples":[...]})"));
  formats.set("grid_nd", ReportValue::string(R"({"dims":[...],"samples":[row-major]})"));
  formats.set("step_function",
              ReportValue::string(R"({"breakpoints":["p/q",...],"values":[...]})"));
  r.set("formats", std::move(formats));
  write_output(r.dump(), out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generalized bounded-variation functionals on sampled periodic functions"};
  app.require_subcommand(1);

  VariationArgs va;
  auto* variation = app.add_subcommand("variation", "family variation of a sampled function");
  variation->add_option("--input", va.input, "grid or step function (path or inline JSON)")
      ->required();
  variation->add_option("--lambda", va.lambda, "weight sequence (path or inline JSON)")
      ->required();
  variation->add_option("--p", va.p, "outer exponent p >= 1")->required();
  variation->add_option("--strategy", va.strategy, "exact | heuristic")
      ->check(CLI::IsMember({"exact", "heuristic"}));
  variation->add_flag("--wrap", va.wrap, "allow one interval to wrap the period");
  variation->add_option("--exact-cap", va.exact_cap, "sample-count cap for the exact engine");
  variation->add_flag("--verify", va.verify, "recheck the witness family");
  variation->add_option("--out", va.out, "output file (default stdout)");

  BvqArgs ba;
  auto* bvq = app.add_subcommand("bvq", "mesh-indexed partition variation");
  bvq->add_option("--input", ba.input, "sampled function (path or inline JSON)")->required();
  bvq->add_option("--q", ba.q, "exponent sequence (path or inline JSON)")->required();
  bvq->add_option("--n-max", ba.n_max, "largest mesh level")->required();
  bvq->add_flag("--no-wrap", ba.no_wrap, "pin partitions at grid point 0");
  bvq->add_option("--size-cap", ba.size_cap, "grid-size cap for the cubic dynamic program");
  bvq->add_option("--out", ba.out, "output file; .csv selects CSV");

  MultivarArgs ma;
  auto* multivar = app.add_subcommand("multivar", "axis variations of a d-variable grid");
  multivar->add_option("--input", ma.input, "d-variable grid (path or inline JSON)")
      ->required();
  multivar->add_option("--mode", ma.mode, "sharp | bvq")
      ->required()
      ->check(CLI::IsMember({"sharp", "bvq"}));
  multivar->add_option("--lambda", ma.lambda, "weight sequence (sharp mode)");
  multivar->add_option("--p", ma.p, "outer exponent (sharp mode)");
  multivar->add_option("--q", ma.q, "exponent sequence (bvq mode)");
  multivar->add_option("--n-max", ma.n_max, "largest mesh level (bvq mode)");
  multivar->add_option("--axis", ma.axis, "restrict to one axis (default: all)");
  multivar->add_option("--strategy", ma.strategy, "exact | heuristic (sharp mode)")
      ->check(CLI::IsMember({"exact", "heuristic"}));
  multivar->add_flag("--wrap", ma.wrap, "allow wrapping intervals (sharp mode)");
  multivar->add_option("--exact-cap", ma.exact_cap, "axis-size cap for the exact engine");
  multivar->add_option("--out", ma.out, "output file (default stdout)");

  CriterionArgs ca;
  auto* criterion = app.add_subcommand("criterion", "inclusion criterion scan");
  criterion->add_option("--lambda", ca.lambda, "weight sequence (path or inline JSON)")
      ->required();
  criterion->add_option("--q", ca.q, "exponent sequence (path or inline JSON)")->required();
  criterion->add_option("--p", ca.p, "inner exponent p >= 1")->required();
  criterion->add_option("--n-max", ca.n_max, "scan horizon")->required();
  criterion->add_option("--k-range", ca.k_range, "k scan range per n: n | 2n")
      ->check(CLI::IsMember({"n", "2n"}));
  criterion->add_option("--growth-factor", ca.growth_factor,
                        "running-max ratio declaring growth");
  criterion->add_option("--k-cap", ca.k_cap, "hard cap on the k scan");
  criterion->add_option("--out", ca.out, "output file; .csv selects CSV");

  ExtremalArgs ea;
  auto* extremal = app.add_subcommand("extremal", "ordered constrained maximization");
  extremal->add_option("--lambda", ea.lambda, "weight sequence (path or inline JSON)")
      ->required();
  extremal->add_option("--q", ea.q, "exponent q > 0")->required();
  extremal->add_option("--n", ea.n, "number of coordinates")->required();
  extremal->add_option("--verify", ea.verify_trials, "random feasible points to test");
  extremal->add_option("--seed", ea.seed, "seed for --verify");
  extremal->add_option("--out", ea.out, "output file (default stdout)");

  ForgeArgs fa;
  auto* forge = app.add_subcommand("forge", "counterexample construction");
  forge->add_option("--lambda", fa.lambda, "weight sequence (path or inline JSON)")
      ->required();
  forge->add_option("--q", fa.q, "exponent sequence (path or inline JSON)")->required();
  forge->add_option("--p", fa.p, "inner exponent p >= 1")->required();
  forge->add_option("--stages", fa.stages, "number of stages to search")->required();
  forge->add_option("--cap", fa.cap, "largest block pitch examined");
  forge->add_flag("--geometric", fa.geometric, "doubling pitch search (closed-form sums)");
  forge->add_option("--q-eval", fa.q_eval, "exponent sampling point: mesh | stage")
      ->check(CLI::IsMember({"mesh", "stage"}));
  forge->add_option("--out", fa.out, "output file (default stdout)");

  std::string config_out;
  auto* config = app.add_subcommand("config", "echo version, defaults, and input formats");
  config->add_option("--out", config_out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
    if (variation->parsed()) return run_variation(va);
    if (bvq->parsed()) return run_bvq(ba);
    if (multivar->parsed()) return run_multivar(ma);
    if (criterion->parsed()) return run_criterion(ca);
    if (extremal->parsed()) return run_extremal(ea);
    if (forge->parsed()) return run_forge(fa);
    if (config->parsed()) return run_config(config_out);
    return 1;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const gbv::CapacityError& e) {
    std::cerr << "error (capacity): " << e.what() << "\n";
    return 2;
  } catch (const gbv::VerificationError& e) {
    std::cerr << "error (verification): " << e.what() << "\n";
    return 3;
  } catch (const gbv::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
