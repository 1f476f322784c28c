// frailhaz — command-line surface for the frailty hazard-ratio library.
//
// Subcommands:
//   solve-nu   recover the frailty parameter nu from {TRR(t1), S(t1)}
//   adjust     convert a marginal (survivor-conditioned) HR into a causal HR
//   curve      emit truncation-attenuation or TRR-sensitivity curves as CSV
//   simulate   run a cohort simulation / coverage study from a config file
//   iv         instrumental-variable scaling of an adjusted HR
//
// Output contract: one single-line JSON record per command on stdout (CSV for
// `curve` without --out); human-readable summaries go to stderr.  On error the
// stdout record is {"command":..., "error":{"kind":..., "message":...}} and
// the exit code is 2 for domain/validation errors, 3 for numerical failures.
// The FRAILHAZ_THREADS environment variable caps internal parallelism
// (0 = auto).

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "frailhaz/adjust.hpp"
#include "frailhaz/errors.hpp"
#include "frailhaz/iv.hpp"
#include "frailhaz/parallel.hpp"
#include "frailhaz/pvf.hpp"
#include "frailhaz/sim.hpp"
#include "frailhaz/solver.hpp"
#include "frailhaz/uncertainty.hpp"
#include "frailhaz/version.hpp"

namespace {

using ordered_json = nlohmann::ordered_json;
namespace fz = frailhaz;

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

// ---------------------------------------------------------------------------
// Family construction from flags

struct FamilyFlags {
  std::string name;
  std::optional<double> m;              // Hougaard shape
  std::optional<double> nonsusceptible; // CompoundPoisson q
};

fz::PvfFamily make_family(const FamilyFlags& f) {
  const fz::FamilyTag tag = fz::PvfFamily::parse_tag(f.name);
  switch (tag) {
    case fz::FamilyTag::Hougaard:
      fz::require(f.m.has_value(), fz::ErrorKind::Validation,
                  "family 'hougaard' requires --m in (-1, 0)");
      fz::require(!f.nonsusceptible.has_value(), fz::ErrorKind::Validation,
                  "--nonsusceptible is only meaningful for compound-poisson");
      return fz::PvfFamily::hougaard(*f.m);
    case fz::FamilyTag::CompoundPoisson:
      fz::require(f.nonsusceptible.has_value(), fz::ErrorKind::Validation,
                  "family 'compound-poisson' requires --nonsusceptible in "
                  "(0, 1)");
      fz::require(!f.m.has_value(), fz::ErrorKind::Validation,
                  "--m is only meaningful for hougaard");
      return fz::PvfFamily::compound_poisson(*f.nonsusceptible);
    default:
      fz::require(!f.m.has_value(), fz::ErrorKind::Validation,
                  "--m is only meaningful for hougaard");
      fz::require(!f.nonsusceptible.has_value(), fz::ErrorKind::Validation,
                  "--nonsusceptible is only meaningful for compound-poisson");
      return tag == fz::FamilyTag::Gamma ? fz::PvfFamily::gamma()
                                         : fz::PvfFamily::inverse_gaussian();
  }
}

void echo_family(ordered_json& inputs, const FamilyFlags& f) {
  inputs["family"] = f.name;
  if (f.m.has_value()) inputs["m"] = *f.m;
  if (f.nonsusceptible.has_value()) inputs["nonsusceptible"] = *f.nonsusceptible;
}

// ---------------------------------------------------------------------------
// Summary-estimate assembly (missing CI bounds degrade to a point interval)

fz::SummaryEstimate make_estimate(double value, const std::optional<double>& lo,
                                  const std::optional<double>& hi,
                                  fz::Scale scale) {
  fz::SummaryEstimate est;
  est.value = value;
  est.lo = lo.value_or(value);
  est.hi = hi.value_or(value);
  est.scale = scale;
  return est;
}

void emit_record(const ordered_json& record) {
  std::cout << record.dump() << "\n";
}

// ---------------------------------------------------------------------------
// solve-nu

struct SolveNuArgs {
  FamilyFlags family;
  double trr = 0.0;
  double s = 0.0;
};

int cmd_solve_nu(const SolveNuArgs& a) {
  const fz::PvfFamily family = make_family(a.family);
  fz::FrailtySummary summary;
  summary.trr_t1 = a.trr;
  summary.s_t1 = a.s;

  fz::SolveDiagnostics diag;
  const fz::PvfParams params = fz::solve_nu(family, summary, &diag);
  const double h0 = fz::invert_survival(params, a.s);

  ordered_json record;
  record["command"] = "solve-nu";
  echo_family(record["inputs"], a.family);
  record["inputs"]["trr"] = a.trr;
  record["inputs"]["s"] = a.s;
  record["results"]["nu"] = params.nu;
  record["results"]["variance"] = params.variance();
  record["results"]["h0_t1"] = h0;
  record["results"]["iterations"] = diag.iterations;
  record["results"]["residual"] = diag.residual;
  record["warnings"] = diag.warnings;
  emit_record(record);

  std::fprintf(stderr, "nu = %.6g  Var(U) = %.6g  H0(t1) = %.6g\n", params.nu,
               params.variance(), h0);
  for (const std::string& w : diag.warnings) {
    std::fprintf(stderr, "warning: %s\n", w.c_str());
  }
  return 0;
}

// ---------------------------------------------------------------------------
// adjust

struct AdjustArgs {
  FamilyFlags family;
  double rmar = 0.0;
  std::optional<double> rmar_lo, rmar_hi;
  double trr = 0.0;
  std::optional<double> trr_lo, trr_hi;
  double s = 0.0;
  std::optional<double> s_lo, s_hi;
  std::string ci = "plugin";
  int draws = 10000;
  std::uint64_t seed = 0;
};

int cmd_adjust(const AdjustArgs& a) {
  const fz::PvfFamily family = make_family(a.family);
  const fz::SummaryEstimate rmar =
      make_estimate(a.rmar, a.rmar_lo, a.rmar_hi, fz::Scale::Log);

  // Solve once on the central values so the record can echo nu; warnings from
  // the solve (e.g. multiple-root suspicion) surface in the record.
  fz::FrailtySummary summary;
  summary.trr_t1 = a.trr;
  summary.s_t1 = a.s;
  fz::SolveDiagnostics diag;
  const fz::PvfParams params = fz::solve_nu(family, summary, &diag);

  ordered_json record;
  record["command"] = "adjust";
  echo_family(record["inputs"], a.family);
  record["inputs"]["rmar"] = a.rmar;
  if (a.rmar_lo) record["inputs"]["rmar_lo"] = *a.rmar_lo;
  if (a.rmar_hi) record["inputs"]["rmar_hi"] = *a.rmar_hi;
  record["inputs"]["trr"] = a.trr;
  if (a.trr_lo) record["inputs"]["trr_lo"] = *a.trr_lo;
  if (a.trr_hi) record["inputs"]["trr_hi"] = *a.trr_hi;
  record["inputs"]["s"] = a.s;
  if (a.s_lo) record["inputs"]["s_lo"] = *a.s_lo;
  if (a.s_hi) record["inputs"]["s_hi"] = *a.s_hi;
  record["inputs"]["ci"] = a.ci;

  double point = 0.0, lo = 0.0, hi = 0.0;
  if (a.ci == "plugin") {
    const fz::PluginCiResult res = fz::plugin_ci(family, rmar, a.trr, a.s);
    point = res.point;
    lo = res.lo;
    hi = res.hi;
    record["results"]["r_causal"] = res.point;
    record["results"]["lo"] = res.lo;
    record["results"]["hi"] = res.hi;
    record["results"]["nu"] = params.nu;
    record["results"]["method"] = "plugin";
    record["warnings"] = diag.warnings;
  } else {
    record["inputs"]["draws"] = a.draws;
    const fz::SummaryEstimate trr_est =
        make_estimate(a.trr, a.trr_lo, a.trr_hi, fz::Scale::Log);
    const fz::SummaryEstimate s_est =
        make_estimate(a.s, a.s_lo, a.s_hi, fz::Scale::Identity);
    fz::CiConfig cfg;
    cfg.n_draws = a.draws;
    cfg.seed = a.seed;
    const fz::NumericCiResult res =
        fz::numeric_ci(family, rmar, trr_est, s_est, cfg);
    point = res.point;
    lo = res.lo;
    hi = res.hi;
    record["results"]["r_causal"] = res.point;
    record["results"]["lo"] = res.lo;
    record["results"]["hi"] = res.hi;
    record["results"]["nu"] = params.nu;
    record["results"]["method"] = "numeric";
    record["results"]["n_failed"] = res.n_failed;
    record["results"]["failure_kinds"] = res.failure_kinds;
    record["warnings"] = diag.warnings;
    record["seed"] = a.seed;
  }
  emit_record(record);

  std::fprintf(stderr, "r_causal = %.4g [%.4g, %.4g] (%s, nu = %.6g)\n", point,
               lo, hi, a.ci.c_str(), params.nu);
  for (const std::string& w : diag.warnings) {
    std::fprintf(stderr, "warning: %s\n", w.c_str());
  }
  return 0;
}

// ---------------------------------------------------------------------------
// curve

struct CurveArgs {
  std::string kind;
  FamilyFlags family;
  double variance = 1.0;
  std::optional<double> r;     // truncation kind
  std::optional<double> rmar;  // trr kind
  std::optional<double> s;     // trr kind: S(t1)
  double grid_from = 0.0;
  double grid_to = 0.0;
  int grid_points = 0;
  std::string out;
};

int cmd_curve(const CurveArgs& a) {
  const fz::PvfFamily family = make_family(a.family);
  fz::require(a.grid_points >= 2, fz::ErrorKind::Validation,
              "--grid-points must be at least 2");
  std::vector<double> grid(static_cast<std::size_t>(a.grid_points));
  for (int i = 0; i < a.grid_points; ++i) {
    grid[static_cast<std::size_t>(i)] =
        i == a.grid_points - 1
            ? a.grid_to
            : a.grid_from +
                  (a.grid_to - a.grid_from) * i / (a.grid_points - 1);
  }

  std::vector<fz::CurvePoint> points;
  std::string header;
  if (a.kind == "truncation") {
    fz::require(a.r.has_value(), fz::ErrorKind::Validation,
                "--kind truncation requires --r (the causal hazard ratio)");
    points = fz::hazard_ratio_curve(family, a.variance, *a.r, grid);
    header = "s,r_mar";
  } else {  // "trr" (membership enforced by the flag parser)
    fz::require(a.rmar.has_value() && a.s.has_value(), fz::ErrorKind::Validation,
                "--kind trr requires --rmar and --s");
    points = fz::trr_sensitivity_curve(family, *a.s, *a.rmar, grid);
    header = "trr,r_causal";
  }

  std::size_t n_valid = 0;
  std::vector<std::string> warnings;
  std::ostringstream csv;
  csv << header << "\n";
  for (const fz::CurvePoint& p : points) {
    csv << fmt17(p.x) << ",";
    if (p.value.has_value()) {
      csv << fmt17(*p.value);
      ++n_valid;
    } else {
      warnings.push_back("x=" + fmt17(p.x) + ": " + p.note);
    }
    csv << "\n";
  }
  fz::require(n_valid > 0, fz::ErrorKind::Validation,
              "every grid point failed; no curve to emit" +
                  (warnings.empty() ? std::string()
                                    : " (first: " + warnings.front() + ")"));

  for (const std::string& w : warnings) {
    std::fprintf(stderr, "warning: %s\n", w.c_str());
  }
  if (!a.out.empty()) {
    std::ofstream file(a.out, std::ios::binary);
    fz::require(static_cast<bool>(file), fz::ErrorKind::Validation,
                "cannot open output file '" + a.out + "'");
    file << csv.str();
    fz::require(static_cast<bool>(file), fz::ErrorKind::Validation,
                "failed writing output file '" + a.out + "'");

    ordered_json record;
    record["command"] = "curve";
    record["inputs"]["kind"] = a.kind;
    echo_family(record["inputs"], a.family);
    if (a.kind == "truncation") {
      record["inputs"]["variance"] = a.variance;
      record["inputs"]["r"] = *a.r;
    } else {
      record["inputs"]["rmar"] = *a.rmar;
      record["inputs"]["s"] = *a.s;
    }
    record["inputs"]["grid_from"] = a.grid_from;
    record["inputs"]["grid_to"] = a.grid_to;
    record["inputs"]["grid_points"] = a.grid_points;
    record["results"]["rows_total"] = points.size();
    record["results"]["rows_valid"] = n_valid;
    record["results"]["out"] = a.out;
    record["warnings"] = warnings;
    emit_record(record);
  } else {
    std::cout << csv.str();
  }
  std::fprintf(stderr, "curve (%s): %zu points, %zu valid\n", header.c_str(),
               points.size(), n_valid);
  return 0;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateArgs {
  std::string config_path;
  int reps = 100;
  std::optional<std::uint64_t> seed;
  std::string out;
};

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_double_value(const std::string& key, const std::string& value) {
  std::size_t idx = 0;
  double out = 0.0;
  try {
    out = std::stod(value, &idx);
  } catch (const std::exception&) {
    idx = 0;
  }
  fz::require(idx == value.size() && !value.empty(), fz::ErrorKind::Validation,
              "config key '" + key + "' has a non-numeric value '" + value +
                  "'");
  return out;
}

long parse_long_value(const std::string& key, const std::string& value) {
  std::size_t idx = 0;
  long out = 0;
  try {
    out = std::stol(value, &idx);
  } catch (const std::exception&) {
    idx = 0;
  }
  fz::require(idx == value.size() && !value.empty(), fz::ErrorKind::Validation,
              "config key '" + key + "' needs an integer value, got '" + value +
                  "'");
  return out;
}

std::uint64_t parse_u64_value(const std::string& key, const std::string& value) {
  std::size_t idx = 0;
  unsigned long long out = 0;
  try {
    out = std::stoull(value, &idx);
  } catch (const std::exception&) {
    idx = 0;
  }
  fz::require(idx == value.size() && !value.empty(), fz::ErrorKind::Validation,
              "config key '" + key + "' needs an unsigned integer, got '" +
                  value + "'");
  return static_cast<std::uint64_t>(out);
}

// Flat key=value scenario config; '#' starts a comment, blank lines ignored.
// Keys match the ScenarioConfig fields; delta defaults to 1, seed to 0; all
// other keys are required.  Unknown or duplicate keys are named in the error.
fz::ScenarioConfig parse_scenario_config(const std::string& path) {
  std::ifstream file(path);
  fz::require(static_cast<bool>(file), fz::ErrorKind::Validation,
              "cannot open config file '" + path + "'");

  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(file, line)) {
    const auto comment = line.find('#');
    if (comment != std::string::npos) line.erase(comment);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    fz::require(eq != std::string::npos, fz::ErrorKind::Validation,
                "config line '" + line + "' is not of the form key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    fz::require(!kv.count(key), fz::ErrorKind::Validation,
                "duplicate config key '" + key + "'");
    kv[key] = value;
  }

  fz::ScenarioConfig cfg;
  bool delta_seen = false;
  bool seed_seen = false;
  std::map<std::string, bool> seen;
  for (const auto& [key, value] : kv) {
    if (key == "n_per_arm") cfg.n_per_arm = parse_long_value(key, value);
    else if (key == "n_twin_pairs") cfg.n_twin_pairs = parse_long_value(key, value);
    else if (key == "n_survey") cfg.n_survey = parse_long_value(key, value);
    else if (key == "h0") cfg.h0 = parse_double_value(key, value);
    else if (key == "nu") cfg.nu = parse_double_value(key, value);
    else if (key == "r_cau") cfg.r_cau = parse_double_value(key, value);
    else if (key == "t1") cfg.t1 = parse_double_value(key, value);
    else if (key == "delta") { cfg.delta = parse_double_value(key, value); delta_seen = true; }
    else if (key == "seed") { cfg.seed = parse_u64_value(key, value); seed_seen = true; }
    else fz::throw_error(fz::ErrorKind::Validation, "unknown config key '" + key + "'");
    seen[key] = true;
  }
  (void)delta_seen;
  (void)seed_seen;
  for (const char* required :
       {"n_per_arm", "n_twin_pairs", "n_survey", "h0", "nu", "r_cau", "t1"}) {
    fz::require(seen.count(required) != 0, fz::ErrorKind::Validation,
                std::string("missing config key '") + required + "'");
  }
  return cfg;
}

void echo_scenario(ordered_json& inputs, const SimulateArgs& a,
                   const fz::ScenarioConfig& cfg) {
  inputs["config"] = a.config_path;
  inputs["reps"] = a.reps;
  inputs["n_per_arm"] = cfg.n_per_arm;
  inputs["n_twin_pairs"] = cfg.n_twin_pairs;
  inputs["n_survey"] = cfg.n_survey;
  inputs["h0"] = cfg.h0;
  inputs["nu"] = cfg.nu;
  inputs["r_cau"] = cfg.r_cau;
  inputs["t1"] = cfg.t1;
  inputs["delta"] = cfg.delta;
}

int cmd_simulate(const SimulateArgs& a) {
  fz::ScenarioConfig cfg = parse_scenario_config(a.config_path);
  if (a.seed.has_value()) cfg.seed = *a.seed;
  fz::require(a.reps >= 1, fz::ErrorKind::Validation,
              "--reps must be at least 1");

  ordered_json record;
  record["command"] = "simulate";
  echo_scenario(record["inputs"], a, cfg);

  if (a.reps == 1) {
    const fz::ScenarioResult r = fz::run_scenario(cfg);
    record["results"]["r_mar"] = r.cox.hr;
    record["results"]["r_mar_lo"] = r.cox.lo;
    record["results"]["r_mar_hi"] = r.cox.hi;
    record["results"]["trr_hat"] = r.trr_hat.value;
    record["results"]["trr_lo"] = r.trr_hat.lo;
    record["results"]["trr_hi"] = r.trr_hat.hi;
    record["results"]["s_hat"] = r.s_hat.value;
    record["results"]["s_lo"] = r.s_hat.lo;
    record["results"]["s_hi"] = r.s_hat.hi;
    record["results"]["r_adjusted"] = r.adjusted;
    record["results"]["adj_lo"] = r.adj_lo;
    record["results"]["adj_hi"] = r.adj_hi;
    record["results"]["n_failed_draws"] = r.n_failed_draws;
    record["warnings"] = ordered_json::array();
    record["seed"] = cfg.seed;
    emit_record(record);
    std::fprintf(stderr,
                 "single run: r_mar = %.4g [%.4g, %.4g]  TRR = %.4g  "
                 "S = %.4g  adjusted = %.4g [%.4g, %.4g]\n",
                 r.cox.hr, r.cox.lo, r.cox.hi, r.trr_hat.value, r.s_hat.value,
                 r.adjusted, r.adj_lo, r.adj_hi);
  } else {
    const fz::CoverageReport report = fz::coverage_study(cfg, a.reps);
    record["results"]["n_reps"] = report.n_reps;
    record["results"]["median_r_mar"] = report.median_r_mar;
    record["results"]["median_r_adjusted"] = report.median_r_adjusted;
    record["results"]["coverage_marginal"] = report.coverage_marginal;
    record["results"]["coverage_adjusted"] = report.coverage_adjusted;
    record["results"]["n_failed_reps"] = report.n_failed_reps;
    record["results"]["failure_kinds"] = report.failure_kinds;
    record["warnings"] = ordered_json::array();
    record["seed"] = cfg.seed;
    emit_record(record);
    std::fprintf(stderr,
                 "coverage study (%d reps, r_cau = %.4g):\n"
                 "  median r_mar      = %.4g   coverage (marginal) = %.3f\n"
                 "  median r_adjusted = %.4g   coverage (adjusted) = %.3f\n"
                 "  failed reps: %d\n",
                 report.n_reps, cfg.r_cau, report.median_r_mar,
                 report.coverage_marginal, report.median_r_adjusted,
                 report.coverage_adjusted, report.n_failed_reps);
  }

  if (!a.out.empty()) {
    std::ofstream file(a.out, std::ios::binary);
    fz::require(static_cast<bool>(file), fz::ErrorKind::Validation,
                "cannot open output file '" + a.out + "'");
    file << record.dump(2) << "\n";
    fz::require(static_cast<bool>(file), fz::ErrorKind::Validation,
                "failed writing output file '" + a.out + "'");
  }
  return 0;
}

// ---------------------------------------------------------------------------
// iv

struct IvArgs {
  double adjusted_hr = 0.0;
  std::optional<double> lo, hi;
  double bg = 0.0;
  double g1 = 0.0;
  double g2 = 0.0;
};

int cmd_iv(const IvArgs& a) {
  fz::IvInput input;
  input.adjusted_hr = make_estimate(a.adjusted_hr, a.lo, a.hi, fz::Scale::Log);
  input.b_g = a.bg;
  input.g1 = a.g1;
  input.g2 = a.g2;
  const fz::IvEstimate est = fz::iv_estimate(input);

  ordered_json record;
  record["command"] = "iv";
  record["inputs"]["adjusted_hr"] = a.adjusted_hr;
  if (a.lo) record["inputs"]["lo"] = *a.lo;
  if (a.hi) record["inputs"]["hi"] = *a.hi;
  record["inputs"]["bg"] = a.bg;
  record["inputs"]["g1"] = a.g1;
  record["inputs"]["g2"] = a.g2;
  record["results"]["beta_a"] = est.beta_a;
  record["results"]["hr_per_unit"] = est.hr_per_unit;
  record["results"]["lo"] = est.lo;
  record["results"]["hi"] = est.hi;
  record["warnings"] = ordered_json::array();
  emit_record(record);

  std::fprintf(stderr, "beta_a = %.4g  HR per unit = %.4g [%.4g, %.4g]\n",
               est.beta_a, est.hr_per_unit, est.lo, est.hi);
  return 0;
}

// ---------------------------------------------------------------------------

void apply_thread_env() {
  const char* env = std::getenv("FRAILHAZ_THREADS");
  if (env == nullptr || *env == '\0') return;
  char* end = nullptr;
  const unsigned long v = std::strtoul(env, &end, 10);
  if (end == env || *end != '\0') {
    std::fprintf(stderr,
                 "warning: ignoring non-numeric FRAILHAZ_THREADS='%s'\n", env);
    return;
  }
  fz::set_max_threads(static_cast<unsigned>(v));
}

int emit_error(const std::string& command, const fz::Error& e) {
  ordered_json record;
  record["command"] = command;
  record["error"]["kind"] = fz::to_string(e.kind());
  record["error"]["message"] = e.what();
  emit_record(record);
  std::fprintf(stderr, "error (%s): %s\n", fz::to_string(e.kind()), e.what());
  return fz::is_domain_error(e.kind()) ? 2 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  apply_thread_env();

  CLI::App app{"frailty-aware hazard-ratio adjustment for left-truncated "
               "survival data"};
  app.set_version_flag("--version", std::string("frailhaz ") + fz::kVersion);
  app.require_subcommand(1);

  auto add_family_flags = [](CLI::App* cmd, FamilyFlags& f, bool required) {
    auto* opt = cmd->add_option(
        "--family", f.name,
        "frailty family: gamma | inverse-gaussian | hougaard | "
        "compound-poisson");
    if (required) opt->required();
    cmd->add_option("--m", f.m, "Hougaard shape parameter, in (-1, 0)");
    cmd->add_option("--nonsusceptible", f.nonsusceptible,
                    "compound-Poisson non-susceptible fraction q, in (0, 1)");
  };

  SolveNuArgs solve_args;
  CLI::App* solve = app.add_subcommand(
      "solve-nu", "recover the frailty parameter nu from {TRR(t1), S(t1)}");
  add_family_flags(solve, solve_args.family, true);
  solve->add_option("--trr", solve_args.trr, "twin recurrence risk at t1")
      ->required();
  solve->add_option("--s", solve_args.s, "population survival to t1")
      ->required();

  AdjustArgs adjust_args;
  CLI::App* adjust = app.add_subcommand(
      "adjust", "convert a marginal hazard ratio into a causal one");
  add_family_flags(adjust, adjust_args.family, true);
  adjust->add_option("--rmar", adjust_args.rmar, "marginal hazard ratio")
      ->required();
  adjust->add_option("--rmar-lo", adjust_args.rmar_lo, "lower 95% bound");
  adjust->add_option("--rmar-hi", adjust_args.rmar_hi, "upper 95% bound");
  adjust->add_option("--trr", adjust_args.trr, "twin recurrence risk at t1")
      ->required();
  adjust->add_option("--trr-lo", adjust_args.trr_lo, "lower 95% bound");
  adjust->add_option("--trr-hi", adjust_args.trr_hi, "upper 95% bound");
  adjust->add_option("--s", adjust_args.s, "population survival to t1")
      ->required();
  adjust->add_option("--s-lo", adjust_args.s_lo, "lower 95% bound");
  adjust->add_option("--s-hi", adjust_args.s_hi, "upper 95% bound");
  adjust->add_option("--ci", adjust_args.ci, "interval method (default plugin)")
      ->check(CLI::IsMember({"plugin", "numeric"}));
  adjust->add_option("--draws", adjust_args.draws,
                     "Monte-Carlo draws for --ci numeric (default 10000)");
  adjust->add_option("--seed", adjust_args.seed,
                     "RNG seed for --ci numeric (default 0)");

  CurveArgs curve_args;
  CLI::App* curve = app.add_subcommand(
      "curve", "emit curve data as CSV (stdout or --out file)");
  curve->add_option("--kind", curve_args.kind,
                    "truncation (r_mar vs s) | trr (r_causal vs TRR)")
      ->required()
      ->check(CLI::IsMember({"truncation", "trr"}));
  add_family_flags(curve, curve_args.family, true);
  curve->add_option("--variance", curve_args.variance,
                    "frailty variance Var(U) for --kind truncation "
                    "(default 1)");
  curve->add_option("--r", curve_args.r,
                    "causal hazard ratio (--kind truncation)");
  curve->add_option("--rmar", curve_args.rmar,
                    "marginal hazard ratio (--kind trr)");
  curve->add_option("--s", curve_args.s, "population survival S(t1) "
                    "(--kind trr)");
  curve->add_option("--grid-from", curve_args.grid_from, "grid start")
      ->required();
  curve->add_option("--grid-to", curve_args.grid_to, "grid end")->required();
  curve->add_option("--grid-points", curve_args.grid_points,
                    "number of grid points (>= 2)")
      ->required();
  curve->add_option("--out", curve_args.out, "write CSV here instead of "
                    "stdout");

  SimulateArgs sim_args;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "cohort simulation / coverage study from a config file");
  simulate->add_option("--config", sim_args.config_path,
                       "flat key=value scenario config")
      ->required();
  simulate->add_option("--reps", sim_args.reps,
                       "replications: 1 = single run, >= 100 = coverage "
                       "study (default 100)");
  simulate->add_option("--seed", sim_args.seed,
                       "master seed (overrides the config file)");
  simulate->add_option("--out", sim_args.out, "also write the report as "
                       "pretty JSON here");

  IvArgs iv_args;
  CLI::App* iv = app.add_subcommand(
      "iv", "instrumental-variable scaling of an adjusted hazard ratio");
  iv->add_option("--adjusted-hr", iv_args.adjusted_hr,
                 "adjusted (causal) HR between instrument levels")
      ->required();
  iv->add_option("--lo", iv_args.lo, "lower 95% bound");
  iv->add_option("--hi", iv_args.hi, "upper 95% bound");
  iv->add_option("--bg", iv_args.bg,
                 "instrument-on-exposure effect per unit of g")
      ->required();
  iv->add_option("--g1", iv_args.g1, "first instrument level")->required();
  iv->add_option("--g2", iv_args.g2, "second instrument level")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::string command;
  try {
    if (app.got_subcommand(solve)) {
      command = "solve-nu";
      return cmd_solve_nu(solve_args);
    }
    if (app.got_subcommand(adjust)) {
      command = "adjust";
      return cmd_adjust(adjust_args);
    }
    if (app.got_subcommand(curve)) {
      command = "curve";
      return cmd_curve(curve_args);
    }
    if (app.got_subcommand(simulate)) {
      command = "simulate";
      return cmd_simulate(sim_args);
    }
    command = "iv";
    return cmd_iv(iv_args);
  } catch (const fz::Error& e) {
    return emit_error(command, e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 1;
  }
}
