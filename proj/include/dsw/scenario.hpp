#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dsw/problem.hpp"
#include "dsw/stepping.hpp"

namespace dsw {

// Parsed scenario file. Parsing is strict: unknown keys anywhere are a
// ParseError, so typos in exponent names cannot silently change the model.
struct ScenarioConfig {
  // parameters block
  double alpha = 1.0;
  double gamma = 0.5;
  std::optional<double> sigma;
  std::optional<int> n;

  // grid block
  std::vector<int> cells;
  std::vector<double> extent;
  std::vector<double> origin;

  // topography block
  std::string topography_preset = "flat";  // flat | bump | slope
  double topography_amplitude = 0.3;
  std::string topography_file;  // overrides preset
  std::string topography_format;  // esri_ascii | csv

  // initial block
  std::string initial_preset;  // dam_break | lake_at_rest | bump | dry | barenblatt
  std::string initial_file;
  double dam_left = 1.0, dam_right = 0.0, dam_interface = 0.5;
  double lake_surface = 0.75;
  double bump_height = 0.8, bump_radius = 0.3;
  double barenblatt_mass = 1.0, barenblatt_time = 1.0;

  // source block
  double source_rate = 0.0;

  std::string boundary = "zero_flux";  // zero_flux | dirichlet_zero_v

  // stepping block
  std::string scheme = "explicit";
  double cfl = 0.4;
  double eps = 1e-8;
  double horizon = 1.0;
  double dt_min = 1e-12;
  double dt_max = 1e-2;
  int store_every = 1;
  int max_newton_iters = 200;
  double newton_tol = 1e-10;

  // output block
  std::string output_dir;
};

// Parses and validates a scenario file (JSON). Throws ParseError for
// malformed or unknown content and ValidationError when values violate the
// model requirements.
ScenarioConfig load_config(const std::string& path);

// Builds the problem, loading topography files relative to the config
// location. Throws ValidationError when the assembled problem is invalid.
Problem assemble_problem(const ScenarioConfig& cfg, const std::string& base_dir = ".");
StepControl step_control(const ScenarioConfig& cfg);

// Rounds to the nearest multiple of 2^-20. Preset topographies are quantized
// so that surface heights and depths subtract and re-add exactly in binary
// floating point; a resting lake is then an exact discrete steady state.
double dyadic(double x);

// Preset field builders shared by the config assembler and the test suites.
ScalarField topography_preset_field(const Grid& g, const std::string& name, double amplitude);
ScalarField initial_dam_break(const Grid& g, const ScalarField& z, double left,
                              double right, double interface_x);
ScalarField initial_lake_at_rest(const Grid& g, const ScalarField& z, double surface);
ScalarField initial_bump(const Grid& g, double height, double radius);
// Source-free self-similar profile of the quadratic slow-diffusion limit,
// centered at the domain midpoint: s^(-1/3) (c - x^2 / (12 s^(2/3)))_+.
ScalarField initial_barenblatt(const Grid& g, double c, double s0);

}  // namespace dsw
