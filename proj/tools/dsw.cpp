// Command-line driver: runs scenarios, writes snapshots and diagnostics,
// evaluates energy reports and lemma suites, and emits boundedness
// certificates. Exit codes: 0 success, 1 verdict/assertion failure,
// 2 usage or I/O error.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "dsw/cylinder.hpp"
#include "dsw/degiorgi.hpp"
#include "dsw/energy.hpp"
#include "dsw/errors.hpp"
#include "dsw/flux.hpp"
#include "dsw/mollify.hpp"
#include "dsw/scenario.hpp"
#include "dsw/snapshot.hpp"
#include "dsw/stepping.hpp"
#include "dsw/verification.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct LoadedScenario {
  dsw::ScenarioConfig cfg;
  dsw::Problem problem;
  dsw::StepControl ctrl;
  std::string base_dir;
};

LoadedScenario load_scenario(const std::string& config_path) {
  LoadedScenario s;
  s.cfg = dsw::load_config(config_path);
  s.base_dir = fs::path(config_path).parent_path().string();
  if (s.base_dir.empty()) s.base_dir = ".";
  s.problem = dsw::assemble_problem(s.cfg, s.base_dir);
  s.ctrl = dsw::step_control(s.cfg);
  return s;
}

dsw::SpaceTimeSolution obtain_solution(const LoadedScenario& s,
                                       const std::string& snapshot_dir) {
  if (!snapshot_dir.empty()) return dsw::read_snapshots(snapshot_dir, s.problem);
  return dsw::run(s.problem, s.ctrl);
}

std::string default_report_path(const LoadedScenario& s, const char* name) {
  if (!s.cfg.output_dir.empty()) {
    fs::path dir = fs::path(s.cfg.output_dir);
    if (dir.is_relative()) dir = fs::path(s.base_dir) / dir;
    return (dir / name).string();
  }
  return name;
}

void write_report(const std::string& path, const json& j) {
  fs::create_directories(fs::path(path).parent_path().string().empty()
                             ? "."
                             : fs::path(path).parent_path().string());
  std::ofstream out(path);
  if (!out) throw dsw::IoError("cannot write report: " + path);
  out << j.dump(2) << "\n";
}

int cmd_run(const std::string& config_path) {
  LoadedScenario s = load_scenario(config_path);
  dsw::SpaceTimeSolution sol = dsw::run(s.problem, s.ctrl);
  std::string out_dir = s.cfg.output_dir.empty() ? "out" : s.cfg.output_dir;
  fs::path dir = fs::path(out_dir);
  if (dir.is_relative()) dir = fs::path(s.base_dir) / dir;
  dsw::write_snapshots(sol, dir.string());
  std::printf("run: %zu steps, %zu stored states, final mass %.12g, clipped %.3g -> %s\n",
              sol.diagnostics.size(), sol.states.size(),
              dsw::field_mass(sol.states.back()), sol.total_clipped_mass,
              dir.string().c_str());
  return 0;
}

int cmd_check(const std::string& config_path, int k_ladder, std::uint64_t seed,
              const std::string& snapshot_dir, std::string report_path) {
  LoadedScenario s = load_scenario(config_path);
  dsw::SpaceTimeSolution sol = obtain_solution(s, snapshot_dir);
  const dsw::Grid& g = s.problem.grid;
  const dsw::Parameters& prm = s.problem.params;
  const double T = sol.final_time();

  json report;
  bool all_ok = true;

  // default nested interior cylinders
  std::array<double, 2> center{g.origin[0] + 0.5 * g.extent[0],
                               g.n == 2 ? g.origin[1] + 0.5 * g.extent[1] : 0.0};
  double half_min = 0.5 * g.extent[0];
  if (g.n == 2) half_min = std::min(half_min, 0.5 * g.extent[1]);
  dsw::Cylinder outer{center, 0.5 * T, 0.8 * half_min, 0.35 * T};
  dsw::Cylinder inner{center, 0.5 * T, 0.4 * half_min, 0.175 * T};

  double vmax_cyl = 0.0;
  {
    dsw::ResolvedCylinder rc = dsw::resolve(outer, sol);
    for (std::size_t j = rc.slice_begin; j < rc.slice_end; ++j)
      for (std::size_t c : rc.cells)
        vmax_cyl = std::max(vmax_cyl, sol.states[j].values[c]);
  }

  // truncation-energy reports on a rising ladder of levels
  {
    json ladder = json::array();
    double prev_lhs = std::numeric_limits<double>::infinity();
    bool monotone = true, finite = true;
    for (int q = 0; q < k_ladder; ++q) {
      const double frac = 0.1 + 0.75 * q / std::max(1, k_ladder - 1);
      const double k = frac * vmax_cyl;
      dsw::EnergyReport rep = dsw::caccioppoli_report(sol, inner, outer, k);
      json entry = rep.to_json();
      entry["k"] = k;
      ladder.push_back(entry);
      finite = finite && std::isfinite(rep.lhs_total()) && std::isfinite(rep.rhs_total());
      if (rep.lhs_total() > prev_lhs * (1.0 + 1e-12)) monotone = false;
      prev_lhs = rep.lhs_total();
    }
    report["caccioppoli"] = {{"ladder", ladder},
                             {"lhs_monotone_in_k", monotone},
                             {"all_terms_finite", finite}};
    all_ok = all_ok && monotone && finite;
  }

  // weak-form residual against the nested cutoff
  {
    dsw::CutoffFunction phi = dsw::build_cutoff(inner, outer);
    const double res = dsw::weak_residual(sol, phi);
    report["weak_residual"] = res;
    all_ok = all_ok && std::isfinite(res);
  }

  // mollifier checks on solution-derived signals
  {
    json mj;
    dsw::TimeSignal mean_signal = [&] {
      std::vector<double> vals(sol.times.size());
      for (std::size_t j = 0; j < sol.times.size(); ++j)
        vals[j] = dsw::field_mass(sol.states[j]) /
                  (g.cell_volume() * static_cast<double>(g.cell_count()));
      return dsw::TimeSignal::scalar(sol.times, vals);
    }();
    const double h = 0.1 * T;
    mj["identity_residual_mean_depth"] = dsw::check_time_derivative_identity(mean_signal, h);

    // contraction applied to the gradient magnitude of v^beta, p = gamma+1
    dsw::TimeSignal grad_signal;
    grad_signal.times = sol.times;
    grad_signal.components = g.cell_count();
    grad_signal.weights.assign(g.cell_count(), g.cell_volume());
    for (const dsw::ScalarField& st : sol.states) {
      dsw::ScalarField vb = dsw::power_transform(st, prm.beta);
      auto gr = dsw::central_gradient(vb);
      for (const auto& gv : gr)
        grad_signal.values.push_back(std::hypot(gv[0], gv[1]));
    }
    grad_signal.validate();
    bool contraction_ok = true;
    for (double p : {1.0, 2.0, prm.gamma + 1.0}) {
      auto [lhs, rhs] = dsw::check_lp_contraction(grad_signal, h, p);
      contraction_ok = contraction_ok && lhs <= rhs * (1.0 + 1e-10);
    }
    mj["gradient_contraction_ok"] = contraction_ok;
    all_ok = all_ok && contraction_ok;
    report["mollifier"] = mj;
  }

  // boundary quantity comparability at the scenario's beta
  {
    dsw::BoundaryBounds bb = dsw::check_boundary_bounds(2000, prm.beta, seed);
    const bool ok = bb.min_ratio > 0.0 && std::isfinite(bb.max_ratio);
    report["boundary_bounds"] = {{"beta", prm.beta},
                                 {"min_ratio", bb.min_ratio},
                                 {"max_ratio", bb.max_ratio},
                                 {"ok", ok}};
    all_ok = all_ok && ok;
  }

  // schedule and exponent identities at the scenario parameters
  {
    dsw::SuiteResult sr = dsw::schedule_identity_suite(seed, 20);
    report["schedule_identities"] = {{"passed", sr.passed}, {"details", sr.details}};
    all_ok = all_ok && sr.passed;
  }

  report["all_passed"] = all_ok;
  if (report_path.empty()) report_path = default_report_path(s, "check_report.json");
  write_report(report_path, report);
  std::printf("check: %s -> %s\n", all_ok ? "all suites passed" : "FAILURES",
              report_path.c_str());
  return all_ok ? 0 : 1;
}

int cmd_certify(const std::string& config_path, const std::string& center_arg, double rho,
                int jmax, const std::string& snapshot_dir, std::string report_path) {
  LoadedScenario s = load_scenario(config_path);
  dsw::SpaceTimeSolution sol = obtain_solution(s, snapshot_dir);

  std::array<double, 2> x_o{0.0, 0.0};
  double t_o = 0.0;
  {
    std::vector<double> parts;
    std::stringstream ss(center_arg);
    std::string tok;
    while (std::getline(ss, tok, ',')) parts.push_back(std::stod(tok));
    const std::size_t want = static_cast<std::size_t>(s.problem.grid.n) + 1;
    if (parts.size() != want)
      throw dsw::ParseError("--center needs " + std::to_string(want) +
                            " comma-separated values (x[,y],t)");
    x_o[0] = parts[0];
    if (s.problem.grid.n == 2) x_o[1] = parts[1];
    t_o = parts.back();
  }

  dsw::CertificateReport rep = dsw::certify(sol, x_o, t_o, rho, s.problem.params, jmax);
  if (report_path.empty()) report_path = default_report_path(s, "certificate.json");
  write_report(report_path, rep.to_json());
  std::printf("certify: k = %.6g, sup = %.6g, c = %g, %s -> %s\n", rep.k_final,
              rep.measured_sup, rep.calibrated_c,
              rep.bound_satisfied ? "bound satisfied" : "BOUND VIOLATED",
              report_path.c_str());
  return rep.bound_satisfied && rep.converged ? 0 : 1;
}

int cmd_lemmas(std::uint64_t seed, const std::string& report_path) {
  std::vector<dsw::SuiteResult> results = dsw::lemma_suites(seed);
  json report;
  bool all_ok = true;
  for (const dsw::SuiteResult& r : results) {
    std::printf("%-22s %s\n", r.name.c_str(), r.passed ? "pass" : "FAIL");
    report[r.name] = {{"passed", r.passed}, {"details", r.details}};
    all_ok = all_ok && r.passed;
  }
  report["all_passed"] = all_ok;
  if (!report_path.empty()) write_report(report_path, report);
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Degenerate shallow-water flow solver with energy and boundedness checks"};
  app.require_subcommand(1);

  std::string config_path, snapshot_dir, report_path, center_arg;
  std::uint64_t seed = 0;
  int k_ladder = 5, jmax = 25;
  double rho = 0.25;

  CLI::App* run = app.add_subcommand("run", "integrate a scenario and write snapshots");
  run->add_option("config", config_path, "scenario file")->required();

  CLI::App* check = app.add_subcommand("check", "energy and lemma checks on a scenario");
  check->add_option("config", config_path, "scenario file")->required();
  check->add_option("--k-ladder", k_ladder, "number of truncation levels");
  check->add_option("--seed", seed, "seed for randomized suites");
  check->add_option("--snapshots", snapshot_dir, "reuse snapshots instead of running");
  check->add_option("--report", report_path, "report path");

  CLI::App* certify = app.add_subcommand("certify", "local boundedness certificate");
  certify->add_option("config", config_path, "scenario file")->required();
  certify->add_option("--center", center_arg, "cylinder center x[,y],t")->required();
  certify->add_option("--rho", rho, "cylinder radius (0,1]")->required();
  certify->add_option("--jmax", jmax, "iteration depth");
  certify->add_option("--snapshots", snapshot_dir, "reuse snapshots instead of running");
  certify->add_option("--report", report_path, "report path");

  CLI::App* lemmas = app.add_subcommand("lemmas", "scenario-free property suites");
  lemmas->add_option("--seed", seed, "seed for randomized suites");
  lemmas->add_option("--report", report_path, "report path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (run->parsed()) return cmd_run(config_path);
    if (check->parsed()) return cmd_check(config_path, k_ladder, seed, snapshot_dir, report_path);
    if (certify->parsed())
      return cmd_certify(config_path, center_arg, rho, jmax, snapshot_dir, report_path);
    if (lemmas->parsed()) return cmd_lemmas(seed, report_path);
  } catch (const dsw::ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const dsw::ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const dsw::IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const dsw::GeometryError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const dsw::QuadratureError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "failure: %s\n", e.what());
    return 1;
  }
  return 2;
}
