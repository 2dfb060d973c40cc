// SPDX-License-Identifier: Apache-2.0
#include "sepvol/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <limits>
#include <ostream>
#include <sstream>

#include "sepvol/chi_table.hpp"
#include "sepvol/error.hpp"
#include "sepvol/separability.hpp"
#include "sepvol/special.hpp"
#include "sepvol/state.hpp"

namespace sepvol::cli {
namespace {

using nlohmann::json;

constexpr std::array<std::pair<Subcommand, std::string_view>, 8> kSubcommands{{
    {Subcommand::Ppt, "ppt"},
    {Subcommand::Sample, "sample"},
    {Subcommand::Estimate, "estimate"},
    {Subcommand::Quad, "quad"},
    {Subcommand::Chi, "chi"},
    {Subcommand::Volumes, "volumes"},
    {Subcommand::MilzStrunz, "milz-strunz"},
    {Subcommand::Verify, "verify"},
}};

const std::vector<std::string> kTargets{"psep-real-hs", "psep-sqrtx-real", "psep-complex-hs", "identity",
                                        "surface"};
const std::vector<std::string> kQuantities{"psep", "separable-fraction", "chi", "acceptance"};

/// Rounds to 15 significant digits so reports print at that precision.
json num(double x) {
  if (std::isnan(x)) return "NaN";
  if (std::isinf(x)) return x > 0 ? "Infinity" : "-Infinity";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return std::strtod(buf, nullptr);
}

std::string csv_num(double x, int digits = 15) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

std::string format_name(OutputFormat f) { return f == OutputFormat::Json ? "json" : "csv"; }

OutputFormat parse_output(std::string_view s) {
  if (s == "json") return OutputFormat::Json;
  if (s == "csv") return OutputFormat::Csv;
  throw DomainError("unknown output format '" + std::string(s) + "'");
}

ParallelPlan plan_of(const RunConfig& c) {
  ParallelPlan p;
  p.seed = c.seed;
  p.threads = c.threads;
  return p;
}

json quad_json(std::string name, const QuadResult& q) {
  return {{"name", std::move(name)},
          {"value", num(q.value)},
          {"abs_error_estimate", num(q.abs_error_estimate)},
          {"evaluations", q.evaluations},
          {"converged", q.converged}};
}

json estimate_json(const MCEstimate& e) {
  return {{"mean", num(e.mean)},
          {"std_error", num(e.std_error)},
          {"n", e.n},
          {"acceptance_rate", num(e.acceptance_rate)},
          {"seed", e.seed}};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("cannot read '" + path + "'");
  return ss.str();
}

// A command result before serialization: the JSON body and, for CSV output,
// the rows including the header.
struct Body {
  json result;
  std::vector<std::string> csv;
  bool failed_item = false;
};

std::string join(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) out += ',';
    out += cells[i];
  }
  return out;
}

Body run_ppt(const RunConfig& c) {
  if (!c.input_path) throw DomainError("ppt needs --input FILE");
  const BlockState4 rho = block_state_from_json(read_file(*c.input_path));
  validate(rho);
  const bool ppt = is_ppt(rho);
  const auto pt = eig4_sym(partial_transpose(rho.matrix()));
  Body b;
  b.result = {{"ppt", ppt}, {"field", to_string(rho.field)}, {"min_eigenvalue_partial_transpose", num(pt[0])}};
  b.csv = {"ppt,field,min_eigenvalue_partial_transpose",
           join({ppt ? "true" : "false", std::string(to_string(rho.field)), csv_num(pt[0])})};
  return b;
}

Body run_sample(const RunConfig& c) {
  if (c.measure != Measure::HS) throw Unsupported("sample draws Hilbert-Schmidt states only");
  Body b;
  b.result = json::array();
  std::vector<std::string> header{"index"};
  for (int r = 0; r < 4; ++r)
    for (int k = 0; k < 4; ++k) {
      header.push_back("m" + std::to_string(r) + std::to_string(k) + "_re");
      header.push_back("m" + std::to_string(r) + std::to_string(k) + "_im");
    }
  b.csv.push_back(join(header));
  // One stream per draw block keeps the output independent of --threads.
  const ParallelPlan plan = plan_of(c);
  const auto parts = for_each_stream(plan, [&](std::uint32_t s) {
    SeededStream stream(plan.seed, s);
    std::vector<BlockState4> out(plan.share(c.n, s));
    for (auto& rho : out) rho = sample_hs_state4(c.field, stream);
    return out;
  });
  std::uint64_t index = 0;
  for (const auto& part : parts) {
    for (const auto& rho : part) {
      b.result.push_back(json::parse(to_json(rho)));
      const Herm4 m = rho.matrix();
      std::vector<std::string> row{std::to_string(index++)};
      for (const Cplx& z : m.e) {
        row.push_back(csv_num(z.re, 17));
        row.push_back(csv_num(z.im, 17));
      }
      b.csv.push_back(join(row));
    }
  }
  return b;
}

Body run_estimate(const RunConfig& c) {
  const ParallelPlan plan = plan_of(c);
  MCEstimate e;
  if (c.quantity == "psep") {
    PsepMcOptions opts;
    opts.assume_eta2_equals_chi2 = c.assume_eta2_equals_chi2;
    ChiTable table;
    if (c.field == Field::Complex && c.points > 0) {
      table = build_chi_table(Field::Complex, uniform_grid(c.points), c.n, plan);
      opts.chi2 = &table;
    }
    e = psep_mc_given_d(c.field, c.measure, c.n, plan, opts);
  } else if (c.quantity == "separable-fraction") {
    if (c.measure != Measure::HS) throw Unsupported("separable-fraction samples the Hilbert-Schmidt measure only");
    e = separable_fraction(c.field, StateSampler::Ginibre, c.n, plan);
  } else if (c.quantity == "chi") {
    e = chi_mc(c.field, c.eps, c.n, plan);
  } else {
    e = unit_ball_acceptance(c.field, c.n, plan);
  }
  Body b;
  b.result = {{"quantity", c.quantity},
              {"field", to_string(c.field)},
              {"measure", to_string(c.measure)},
              {"n", e.n},
              {"seed", e.seed},
              {"mean", num(e.mean)},
              {"std_error", num(e.std_error)},
              {"acceptance_rate", num(e.acceptance_rate)}};
  b.csv = {"quantity,field,measure,n,seed,mean,std_error,acceptance_rate",
           join({c.quantity, std::string(to_string(c.field)), std::string(to_string(c.measure)),
                 std::to_string(e.n), std::to_string(e.seed), csv_num(e.mean), csv_num(e.std_error),
                 csv_num(e.acceptance_rate)})};
  return b;
}

void quad_rows_to_csv(Body& b) {
  b.csv = {"name,value,abs_error_estimate,evaluations,converged"};
  for (const auto& r : b.result) {
    b.csv.push_back(join({r["name"].get<std::string>(), csv_num(r["value"].get<double>()),
                          csv_num(r["abs_error_estimate"].get<double>()),
                          std::to_string(r["evaluations"].get<std::uint64_t>()),
                          r["converged"].get<bool>() ? "true" : "false"}));
  }
}

Body run_quad(const RunConfig& c) {
  Body b;
  b.result = json::array();
  if (c.target == "psep-real-hs") {
    const RealHsResult r = psep_real_hs(c.tol);
    b.result.push_back(quad_json("psep_real_hs", r.result));
    b.result.push_back(quad_json("inner_identity", r.identity));
    b.result.push_back(quad_json("psep_real_hs_2d", r.direct_2d));
    b.result[0]["paths_agree"] = r.paths_agree;
  } else if (c.target == "psep-sqrtx-real") {
    const SqrtxResult r = psep_sqrtx_real(c.tol);
    b.result.push_back(quad_json("psep_sqrtx_real", r.result));
    b.result[0]["numerator"] = num(r.numerator);
    b.result[0]["denominator"] = num(r.denominator);
  } else if (c.target == "identity") {
    b.result.push_back(quad_json("inner_identity", hs_inner_identity(c.tol)));
  } else if (c.target == "surface") {
    b.result.push_back(quad_json("surface_volume", surface_volume(std::max(c.tol, 1e-9))));
    QuadResult reduced;
    reduced.value = surface_volume_reduced(c.tol);
    reduced.abs_error_estimate = c.tol;
    reduced.converged = true;
    b.result.push_back(quad_json("surface_volume_reduced", reduced));
  } else {
    const ParallelPlan plan = plan_of(c);
    HybridOptions opts;
    opts.tol = c.tol;
    HybridResult h;
    if (c.points == 0) {
      h = psep_complex_hs_adaptive(c.n, plan, opts);
    } else {
      h = psep_complex_hs(build_chi_table(Field::Complex, uniform_grid(c.points), c.n, plan), opts);
    }
    QuadResult q;
    q.value = h.value;
    q.abs_error_estimate = h.sigma;
    q.evaluations = h.evaluations;
    q.converged = true;
    json row = quad_json("psep_complex_hs", q);
    row["quad_error"] = num(h.quad_error);
    row["table_sigma"] = num(h.table_sigma);
    row["interpolation_error"] = num(h.interpolation_error);
    row["value_1d"] = num(h.value_1d);
    row["table_points"] = h.table_points;
    row["n"] = c.n;
    row["seed"] = c.seed;
    b.result.push_back(row);
  }
  quad_rows_to_csv(b);
  return b;
}

Body run_chi(const RunConfig& c) {
  Body b;
  b.result = json::array();
  if (c.field == Field::Real) {
    b.csv.emplace_back("epsilon,chi_tilde");
    for (int i = 0; i <= 1000; ++i) {
      const double e = i / 1000.0;
      const double v = chi1_tilde(e);
      b.result.push_back({{"epsilon", num(e)}, {"chi_tilde", num(v)}});
      b.csv.push_back(csv_num(e, 12) + "," + csv_num(v, 12));
    }
    return b;
  }
  const std::size_t points = c.points == 0 ? 33 : c.points;
  const ChiTable t = build_chi_table(Field::Complex, uniform_grid(points), c.n, plan_of(c));
  b.csv.emplace_back("epsilon,chi_tilde,std_error");
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double se = std::sqrt(std::max(0.0, t.covariance[i * t.size() + i]));
    b.result.push_back({{"epsilon", num(t.eps[i])}, {"chi_tilde", num(t.value[i])}, {"std_error", num(se)}});
    b.csv.push_back(csv_num(t.eps[i], 12) + "," + csv_num(t.value[i], 12) + "," + csv_num(se, 12));
  }
  return b;
}

Body run_volumes(const RunConfig& c) {
  Body b;
  b.result = json::array();
  b.csv.emplace_back("name,computed,reference,rel_error");
  for (const VolumeReport& r : section5_volumes(std::min(c.tol, 1e-13))) {
    b.result.push_back({{"name", r.name},
                        {"computed", num(r.computed)},
                        {"reference", num(r.reference)},
                        {"rel_error", num(r.rel_error)}});
    b.csv.push_back(join({r.name, csv_num(r.computed), csv_num(r.reference), csv_num(r.rel_error)}));
  }
  for (Field f : {Field::Real, Field::Complex}) {
    const std::string name = "sqrtx_volume_" + std::string(to_string(f));
    b.result.push_back({{"name", name}, {"computed", num(sqrtx_volume(f))}, {"infinite", true}});
    b.csv.push_back(name + ",inf,inf,0");
  }
  return b;
}

Body run_milz_strunz(const RunConfig& c) {
  if (c.measure != Measure::HS) throw Unsupported("milz-strunz scans the Hilbert-Schmidt measure only");
  for (double r : c.radii)
    if (!(r >= 0.0 && r < 1.0)) throw DomainError("Bloch radius must lie in [0, 1)");
  const auto scan = milz_strunz_scan(c.field, c.radii, c.n, plan_of(c));
  Body b;
  b.result = json::array();
  b.csv.emplace_back("r,mean,std_error,n,deterministic");
  for (const RadiusEstimate& re : scan) {
    json row = estimate_json(re.estimate);
    row["r"] = num(re.r);
    std::string det;
    if (c.field == Field::Real) {
      const Density2 d = Density2::on_axis(Field::Real, re.r);
      const double ratio = conditional_volume(d, Field::Real) / conditional_whole_volume(d, Field::Real);
      row["deterministic"] = num(ratio);
      det = csv_num(ratio);
    }
    b.result.push_back(row);
    b.csv.push_back(join({csv_num(re.r), csv_num(re.estimate.mean), csv_num(re.estimate.std_error),
                          std::to_string(re.estimate.n), det}));
  }
  return b;
}

struct Check {
  std::string name;
  double value;
  double reference;
  double tolerance;
  bool relative = false;
};

Body run_verify(const RunConfig&) {
  std::vector<Check> checks;
  const double vol_b = 2.0 * kPi * kPi / 3.0;
  for (double delta : {0.1, 0.5, 1.0, 2.0, 5.0}) {
    checks.push_back({"defect_chi_consistency_" + csv_num(delta, 3),
                      defect(delta) + vol_b * chi1_tilde(std::exp(-delta)), vol_b, 1e-9});
  }
  checks.push_back({"defect_limit_40", defect(40.0), vol_b, 1e-8});
  checks.push_back({"inner_identity", hs_inner_identity().value, 0.25, 1e-8});
  const RealHsResult hs = psep_real_hs();
  checks.push_back({"psep_real_hs", hs.result.value, 29.0 / 64.0, 1e-8});
  checks.push_back({"psep_real_hs_2d", hs.direct_2d.value, hs.result.value, 1e-7});
  const SqrtxResult sx = psep_sqrtx_real();
  checks.push_back({"psep_sqrtx_real", sx.result.value, 0.26223, 5e-5});
  checks.push_back({"psep_sqrtx_numerator", sx.numerator, 0.549213, 5e-5});
  for (const VolumeReport& r : section5_volumes()) {
    checks.push_back({"section5_" + r.name, r.computed, r.reference,
                      r.name.rfind("chi", 0) == 0 ? 1e-10 : 1e-9, true});
  }
  const double surface = surface_volume().value;
  checks.push_back({"surface_volume", surface, 2.0 * vol_b, 1e-6});
  checks.push_back({"surface_volume_reduced", surface_volume_reduced(), 2.0 * vol_b, 1e-6});
  for (double eps : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const double eta = 1.0 - 2.0 * defect(-std::log(eps)) / surface;
    checks.push_back({"eta_equals_chi_" + csv_num(eps, 3), eta, chi1_tilde(eps), 1e-6});
  }

  Body b;
  b.result = json::object();
  json items = json::array();
  b.csv.emplace_back("name,value,reference,error,tolerance,relative,pass");
  int passed = 0;
  for (const Check& ch : checks) {
    const double err = std::abs(ch.value - ch.reference) / (ch.relative ? std::abs(ch.reference) : 1.0);
    const bool ok = err < ch.tolerance;
    passed += ok ? 1 : 0;
    items.push_back({{"name", ch.name},
                     {"value", num(ch.value)},
                     {"reference", num(ch.reference)},
                     {"error", num(err)},
                     {"tolerance", num(ch.tolerance)},
                     {"relative", ch.relative},
                     {"pass", ok}});
    b.csv.push_back(join({ch.name, csv_num(ch.value), csv_num(ch.reference), csv_num(err),
                          csv_num(ch.tolerance), ch.relative ? "true" : "false", ok ? "true" : "false"}));
  }
  const int total = static_cast<int>(checks.size());
  b.result["items"] = items;
  b.result["passed"] = passed;
  b.result["failed"] = total - passed;
  b.failed_item = passed != total;
  return b;
}

Body dispatch(const RunConfig& c) {
  switch (c.subcommand) {
    case Subcommand::Ppt: return run_ppt(c);
    case Subcommand::Sample: return run_sample(c);
    case Subcommand::Estimate: return run_estimate(c);
    case Subcommand::Quad: return run_quad(c);
    case Subcommand::Chi: return run_chi(c);
    case Subcommand::Volumes: return run_volumes(c);
    case Subcommand::MilzStrunz: return run_milz_strunz(c);
    case Subcommand::Verify: return run_verify(c);
  }
  throw DomainError("unknown subcommand");
}

json config_json(const RunConfig& c) {
  json j = {{"subcommand", to_string(c.subcommand)},
            {"field", to_string(c.field)},
            {"measure", to_string(c.measure)},
            {"n", c.n},
            {"seed", c.seed},
            {"tol", c.tol},
            {"output", format_name(c.output)},
            {"threads", c.threads},
            {"assume_eta2_equals_chi2", c.assume_eta2_equals_chi2},
            {"target", c.target},
            {"quantity", c.quantity},
            {"eps", c.eps},
            {"radii", c.radii},
            {"points", c.points}};
  j["input_path"] = c.input_path ? json(*c.input_path) : json(nullptr);
  return j;
}

// Pulls the echoed config out of a JSON report or a CSV report's first line.
RunConfig config_from_report(const std::string& text) {
  const std::string marker = "# config: ";
  if (text.rfind(marker, 0) == 0) {
    const auto end = text.find('\n');
    return config_from_json(text.substr(marker.size(), end == std::string::npos ? end : end - marker.size()));
  }
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw DomainError(std::string("replay file is not a report: ") + e.what());
  }
  if (j.is_object() && j.contains("config")) return config_from_json(j["config"].dump());
  return config_from_json(text);
}

}  // namespace

std::string_view to_string(Subcommand s) noexcept {
  for (const auto& [k, name] : kSubcommands)
    if (k == s) return name;
  return "verify";
}

Subcommand parse_subcommand(std::string_view name) {
  for (const auto& [k, n] : kSubcommands)
    if (n == name) return k;
  throw DomainError("unknown subcommand '" + std::string(name) + "'");
}

void validate(const RunConfig& c) {
  if (c.n < 1) throw DomainError("n must be at least 1");
  if (!(c.tol > 0.0)) throw DomainError("tol must be positive");
  if (c.threads < 1) throw DomainError("threads must be at least 1");
  if (c.field == Field::Complex && c.measure == Measure::SqrtX && !c.assume_eta2_equals_chi2) {
    throw Unsupported("complex sqrtx needs --assume-eta2-equals-chi2 (eta~_2 = chi~_2 is conjectured)");
  }
  if (std::find(kTargets.begin(), kTargets.end(), c.target) == kTargets.end()) {
    throw DomainError("unknown quad target '" + c.target + "'");
  }
  if (std::find(kQuantities.begin(), kQuantities.end(), c.quantity) == kQuantities.end()) {
    throw DomainError("unknown estimate quantity '" + c.quantity + "'");
  }
  if (c.points != 0 && (c.points < 4 || c.points > 1025)) throw DomainError("points must lie in [4, 1025]");
}

std::string config_to_json(const RunConfig& c) { return config_json(c).dump(); }

RunConfig config_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw DomainError(std::string("invalid config JSON: ") + e.what());
  }
  if (!j.is_object()) throw DomainError("config JSON must be an object");
  RunConfig c;
  try {
    c.subcommand = parse_subcommand(j.at("subcommand").get<std::string>());
    if (j.contains("field")) c.field = parse_field(j["field"].get<std::string>());
    if (j.contains("measure")) c.measure = parse_measure(j["measure"].get<std::string>());
    if (j.contains("n")) c.n = j["n"].get<std::uint64_t>();
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("tol")) c.tol = j["tol"].get<double>();
    if (j.contains("output")) c.output = parse_output(j["output"].get<std::string>());
    if (j.contains("threads")) c.threads = j["threads"].get<unsigned>();
    if (j.contains("assume_eta2_equals_chi2")) c.assume_eta2_equals_chi2 = j["assume_eta2_equals_chi2"].get<bool>();
    if (j.contains("target")) c.target = j["target"].get<std::string>();
    if (j.contains("quantity")) c.quantity = j["quantity"].get<std::string>();
    if (j.contains("eps")) c.eps = j["eps"].get<double>();
    if (j.contains("radii")) c.radii = j["radii"].get<std::vector<double>>();
    if (j.contains("points")) c.points = j["points"].get<std::size_t>();
    if (j.contains("input_path") && !j["input_path"].is_null()) c.input_path = j["input_path"].get<std::string>();
  } catch (const json::exception& e) {
    throw DomainError(std::string("invalid config field: ") + e.what());
  }
  return c;
}

RunOutcome run(const RunConfig& config) {
  RunOutcome out;
  try {
    validate(config);
    const Body body = dispatch(config);
    if (config.output == OutputFormat::Json) {
      json report = {{"config", config_json(config)}, {"result", body.result}};
      out.report = report.dump(2) + "\n";
    } else {
      out.report = "# config: " + config_to_json(config) + "\n";
      for (const auto& line : body.csv) out.report += line + "\n";
    }
    out.exit_code = body.failed_item ? kExitVerifyFailed : kExitOk;
    if (body.failed_item) out.diagnostic = "verify: at least one item failed\n";
  } catch (const NoConvergence& e) {
    out.exit_code = kExitNoConvergence;
    out.diagnostic = std::string("no convergence: ") + e.what() + " (partial " + csv_num(e.partial()) +
                     ", error " + csv_num(e.error_estimate()) + ", budget " + std::to_string(e.budget()) + ")\n";
  } catch (const IoError& e) {
    out.exit_code = kExitIo;
    out.diagnostic = std::string("i/o error: ") + e.what() + "\n";
  } catch (const std::exception& e) {
    out.exit_code = kExitValidation;
    out.diagnostic = std::string("error: ") + e.what() + "\n";
  }
  return out;
}

namespace {

std::string_view describe(Subcommand s) noexcept {
  switch (s) {
    case Subcommand::Ppt: return "Peres-Horodecki test of a state read from --input";
    case Subcommand::Sample: return "Draw Hilbert-Schmidt states";
    case Subcommand::Estimate: return "Monte Carlo estimate of a probability or volume ratio";
    case Subcommand::Quad: return "Deterministic quadrature for a --target";
    case Subcommand::Chi: return "Tabulate chi~_d on [0, 1]";
    case Subcommand::Volumes: return "State-space volumes and normalisation constants";
    case Subcommand::MilzStrunz: return "Conditional separability probability across Bloch radii";
    case Subcommand::Verify: return "Check the built-in closed forms";
  }
  return "";
}

}  // namespace

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Separability probabilities of two-qubit and two-rebit states"};
  app.require_subcommand(0, 1);
  std::string replay;
  app.add_option("--replay", replay, "Rerun the config echoed in a previous report");

  RunConfig cfg;
  std::string field = "real";
  std::string measure = "hs";
  std::string output = "json";
  std::string input;
  std::optional<std::uint64_t> seed;

  for (const auto& [kind, name] : kSubcommands) {
    CLI::App* sub = app.add_subcommand(std::string(name), std::string(describe(kind)));
    sub->add_option("--field", field, "real or complex")->check(CLI::IsMember({"real", "complex"}));
    sub->add_option("--measure", measure, "hs or sqrtx")->check(CLI::IsMember({"hs", "sqrtx"}));
    sub->add_option("-n,--n", cfg.n, "Sample count")->check(CLI::PositiveNumber);
    sub->add_option("--seed", seed, "Seed (default: SEPVOL_SEED, then a fixed value)");
    sub->add_option("--tol", cfg.tol, "Absolute quadrature tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--output", output, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--threads", cfg.threads, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_flag("--assume-eta2-equals-chi2", cfg.assume_eta2_equals_chi2,
                  "Use chi~_2 in place of the conjectured eta~_2");
    if (kind == Subcommand::Ppt) sub->add_option("--input", input, "State JSON file")->required();
    if (kind == Subcommand::Quad) sub->add_option("--target", cfg.target, "Integral to evaluate")->check(CLI::IsMember(kTargets));
    if (kind == Subcommand::Estimate) {
      sub->add_option("--quantity", cfg.quantity, "Quantity to estimate")->check(CLI::IsMember(kQuantities));
      sub->add_option("--eps", cfg.eps, "Epsilon for --quantity chi");
    }
    if (kind == Subcommand::MilzStrunz) sub->add_option("--radii", cfg.radii, "Bloch radii")->delimiter(',');
    if (kind == Subcommand::Quad || kind == Subcommand::Chi || kind == Subcommand::Estimate) {
      sub->add_option("--points", cfg.points, "chi~_2 table nodes (0: adaptive)");
    }
  }

  std::vector<std::string> args;
  for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  RunOutcome result;
  try {
    if (!replay.empty()) {
      cfg = config_from_report(read_file(replay));
    } else {
      CLI::App* chosen = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front();
      if (chosen == nullptr) {
        err << app.help();
        return kExitValidation;
      }
      cfg.subcommand = parse_subcommand(chosen->get_name());
      cfg.field = parse_field(field);
      cfg.measure = parse_measure(measure);
      cfg.output = parse_output(output);
      if (!input.empty()) cfg.input_path = input;
      if (seed) {
        cfg.seed = *seed;
      } else if (const char* env = std::getenv("SEPVOL_SEED"); env != nullptr && *env != '\0') {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (*end != '\0') throw DomainError("SEPVOL_SEED is not an unsigned integer");
        cfg.seed = v;
      }
    }
    result = run(cfg);
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  out << result.report;
  err << result.diagnostic;
  if (!out) {
    err << "i/o error: cannot write the report\n";
    return kExitIo;
  }
  return result.exit_code;
}

}  // namespace sepvol::cli
