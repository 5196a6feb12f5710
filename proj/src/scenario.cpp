#include "dsw/scenario.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "dsw/errors.hpp"
#include "dsw/raster.hpp"

namespace dsw {

namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::string& block,
                const std::set<std::string>& allowed) {
  if (!obj.is_object()) throw ParseError("block '" + block + "' must be an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key()))
      throw ParseError("unknown key '" + it.key() + "' in " + block);
  }
}

double need_number(const json& obj, const std::string& block, const std::string& key) {
  if (!obj.contains(key)) throw ParseError(block + ": missing key '" + key + "'");
  if (!obj[key].is_number()) throw ParseError(block + ": key '" + key + "' must be a number");
  return obj[key].get<double>();
}

double opt_number(const json& obj, const std::string& block, const std::string& key,
                  double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number()) throw ParseError(block + ": key '" + key + "' must be a number");
  return obj[key].get<double>();
}

std::string opt_string(const json& obj, const std::string& block, const std::string& key,
                       const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_string()) throw ParseError(block + ": key '" + key + "' must be a string");
  return obj[key].get<std::string>();
}

}  // namespace

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  json root;
  try {
    root = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("config parse error: ") + e.what());
  }
  check_keys(root, "config",
             {"parameters", "grid", "topography", "initial", "source", "boundary",
              "stepping", "output"});

  ScenarioConfig cfg;

  if (!root.contains("parameters")) throw ParseError("config: missing 'parameters' block");
  {
    const json& p = root["parameters"];
    check_keys(p, "parameters", {"alpha", "gamma", "sigma", "n"});
    cfg.alpha = need_number(p, "parameters", "alpha");
    cfg.gamma = need_number(p, "parameters", "gamma");
    if (p.contains("sigma")) cfg.sigma = need_number(p, "parameters", "sigma");
    if (p.contains("n")) cfg.n = static_cast<int>(need_number(p, "parameters", "n"));
  }

  if (!root.contains("grid")) throw ParseError("config: missing 'grid' block");
  {
    const json& gj = root["grid"];
    check_keys(gj, "grid", {"cells", "extent", "origin"});
    if (!gj.contains("cells") || !gj["cells"].is_array())
      throw ParseError("grid: 'cells' must be an array of 1 or 2 integers");
    for (const auto& c : gj["cells"]) cfg.cells.push_back(c.get<int>());
    if (cfg.cells.size() < 1 || cfg.cells.size() > 2)
      throw ParseError("grid: 'cells' must have 1 or 2 entries");
    if (gj.contains("extent"))
      for (const auto& e : gj["extent"]) cfg.extent.push_back(e.get<double>());
    if (gj.contains("origin"))
      for (const auto& o : gj["origin"]) cfg.origin.push_back(o.get<double>());
    if (cfg.extent.empty()) cfg.extent.assign(cfg.cells.size(), 1.0);
    if (cfg.origin.empty()) cfg.origin.assign(cfg.cells.size(), 0.0);
    if (cfg.extent.size() != cfg.cells.size() || cfg.origin.size() != cfg.cells.size())
      throw ParseError("grid: extent/origin must match the cells dimension");
  }

  if (root.contains("topography")) {
    const json& t = root["topography"];
    check_keys(t, "topography", {"preset", "amplitude", "file", "format"});
    cfg.topography_preset = opt_string(t, "topography", "preset", "flat");
    cfg.topography_amplitude = opt_number(t, "topography", "amplitude", 0.3);
    cfg.topography_file = opt_string(t, "topography", "file", "");
    cfg.topography_format = opt_string(t, "topography", "format", "");
  }

  if (!root.contains("initial")) throw ParseError("config: missing 'initial' block");
  {
    const json& i = root["initial"];
    check_keys(i, "initial",
               {"preset", "file", "left_height", "right_height", "interface", "surface",
                "height", "radius", "mass", "time_offset"});
    cfg.initial_preset = opt_string(i, "initial", "preset", "");
    cfg.initial_file = opt_string(i, "initial", "file", "");
    if (cfg.initial_preset.empty() && cfg.initial_file.empty())
      throw ParseError("initial: need either 'preset' or 'file'");
    cfg.dam_left = opt_number(i, "initial", "left_height", 1.0);
    cfg.dam_right = opt_number(i, "initial", "right_height", 0.0);
    cfg.dam_interface = opt_number(i, "initial", "interface", 0.5);
    cfg.lake_surface = opt_number(i, "initial", "surface", 0.75);
    cfg.bump_height = opt_number(i, "initial", "height", 0.8);
    cfg.bump_radius = opt_number(i, "initial", "radius", 0.3);
    cfg.barenblatt_mass = opt_number(i, "initial", "mass", 1.0);
    cfg.barenblatt_time = opt_number(i, "initial", "time_offset", 1.0);
  }

  if (root.contains("source")) {
    const json& s = root["source"];
    check_keys(s, "source", {"preset", "rate"});
    std::string preset = opt_string(s, "source", "preset", "zero");
    if (preset == "zero") {
      cfg.source_rate = 0.0;
    } else if (preset == "constant") {
      cfg.source_rate = need_number(s, "source", "rate");
    } else {
      throw ParseError("source: unknown preset '" + preset + "'");
    }
  }

  if (root.contains("boundary")) {
    if (!root["boundary"].is_string()) throw ParseError("boundary must be a string");
    cfg.boundary = root["boundary"].get<std::string>();
    if (cfg.boundary != "zero_flux" && cfg.boundary != "dirichlet_zero_v")
      throw ParseError("boundary: unknown value '" + cfg.boundary + "'");
  }

  if (!root.contains("stepping")) throw ParseError("config: missing 'stepping' block");
  {
    const json& st = root["stepping"];
    check_keys(st, "stepping",
               {"scheme", "cfl", "eps", "T", "dt_min", "dt_max", "store_every",
                "max_newton_iters", "newton_tol"});
    cfg.scheme = opt_string(st, "stepping", "scheme", "explicit");
    if (cfg.scheme != "explicit" && cfg.scheme != "semi_implicit")
      throw ParseError("stepping: unknown scheme '" + cfg.scheme + "'");
    cfg.cfl = opt_number(st, "stepping", "cfl", 0.4);
    cfg.eps = opt_number(st, "stepping", "eps", 1e-8);
    cfg.horizon = need_number(st, "stepping", "T");
    cfg.dt_min = opt_number(st, "stepping", "dt_min", 1e-12);
    cfg.dt_max = opt_number(st, "stepping", "dt_max", 1e-2);
    cfg.store_every = static_cast<int>(opt_number(st, "stepping", "store_every", 1));
    cfg.max_newton_iters =
        static_cast<int>(opt_number(st, "stepping", "max_newton_iters", 200));
    cfg.newton_tol = opt_number(st, "stepping", "newton_tol", 1e-10);
  }

  if (root.contains("output")) {
    const json& o = root["output"];
    check_keys(o, "output", {"directory"});
    cfg.output_dir = opt_string(o, "output", "directory", "");
  }

  if (!(cfg.cfl > 0.0 && cfg.cfl <= 1.0))
    throw ValidationError("stepping: cfl must lie in (0,1]");
  if (!(cfg.dt_min <= cfg.dt_max))
    throw ValidationError("stepping: dt_min must not exceed dt_max");
  return cfg;
}

double dyadic(double x) { return std::round(x * 1048576.0) / 1048576.0; }

namespace {

double radial2(const Grid& g, std::array<double, 2> x, std::array<double, 2> c) {
  double dx = x[0] - c[0];
  double dy = g.n == 2 ? x[1] - c[1] : 0.0;
  return dx * dx + dy * dy;
}

std::array<double, 2> domain_center(const Grid& g) {
  return {g.origin[0] + 0.5 * g.extent[0],
          g.n == 2 ? g.origin[1] + 0.5 * g.extent[1] : 0.0};
}

}  // namespace

ScalarField topography_preset_field(const Grid& g, const std::string& name,
                                    double amplitude) {
  if (name == "flat") return ScalarField::zeros(g);
  const std::array<double, 2> c = domain_center(g);
  if (name == "bump") {
    const double w = 0.35 * g.extent[0];
    return ScalarField::from_function(g, [&](std::array<double, 2> x) {
      const double r2 = radial2(g, x, c) / (w * w);
      const double b = r2 >= 1.0 ? 0.0 : (1.0 - r2) * (1.0 - r2);
      return dyadic(amplitude * b);
    });
  }
  if (name == "slope") {
    return ScalarField::from_function(g, [&](std::array<double, 2> x) {
      return dyadic(amplitude * (x[0] - g.origin[0]) / g.extent[0]);
    });
  }
  throw ValidationError("topography: unknown preset '" + name + "'");
}

ScalarField initial_dam_break(const Grid& g, const ScalarField& z, double left,
                              double right, double interface_x) {
  ScalarField v = ScalarField::zeros(g);
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) {
      const double surface = g.x_center(i) < interface_x ? left : right;
      v.at(i, j) = std::max(0.0, surface - z.at(i, j));
    }
  return v;
}

ScalarField initial_lake_at_rest(const Grid& g, const ScalarField& z, double surface) {
  const double s = dyadic(surface);
  ScalarField v = ScalarField::zeros(g);
  for (std::size_t k = 0; k < v.values.size(); ++k)
    v.values[k] = std::max(0.0, s - z.values[k]);
  return v;
}

ScalarField initial_bump(const Grid& g, double height, double radius) {
  const std::array<double, 2> c = domain_center(g);
  return ScalarField::from_function(g, [&](std::array<double, 2> x) {
    const double r2 = radial2(g, x, c) / (radius * radius);
    return r2 >= 1.0 ? 0.0 : height * (1.0 - r2) * (1.0 - r2);
  });
}

ScalarField initial_barenblatt(const Grid& g, double c, double s0) {
  const std::array<double, 2> mid = domain_center(g);
  const double scale = std::pow(s0, -1.0 / 3.0);
  const double spread = 12.0 * std::pow(s0, 2.0 / 3.0);
  return ScalarField::from_function(g, [&](std::array<double, 2> x) {
    const double dx = x[0] - mid[0];
    return scale * std::max(0.0, c - dx * dx / spread);
  });
}

Problem assemble_problem(const ScenarioConfig& cfg, const std::string& base_dir) {
  const int n = static_cast<int>(cfg.cells.size());
  if (cfg.n && *cfg.n != n)
    throw ValidationError("parameters: n does not match the grid dimension");

  Parameters params;
  try {
    const double sigma = cfg.sigma ? *cfg.sigma : default_sigma(cfg.gamma, n);
    params = derive_parameters(cfg.alpha, cfg.gamma, n, sigma);
  } catch (const DomainError& e) {
    throw ValidationError(std::string("parameters: ") + e.what());
  }

  Problem p;
  p.params = params;

  ScalarField topo{};
  const bool topo_from_file = !cfg.topography_file.empty();
  bool esri = false;
  if (topo_from_file) {
    std::filesystem::path path(cfg.topography_file);
    if (path.is_relative()) path = std::filesystem::path(base_dir) / path;
    std::string fmt = cfg.topography_format;
    if (fmt.empty()) fmt = path.extension() == ".asc" ? "esri_ascii" : "csv";
    if (fmt == "esri_ascii") {
      topo = read_esri_ascii(path.string());
      esri = true;
    } else if (fmt == "csv") {
      topo = read_csv_field(path.string());
    } else {
      throw ValidationError("topography: unknown format '" + fmt + "'");
    }
    if (topo.grid.n != n || topo.grid.nx() != cfg.cells[0] ||
        (n == 2 && topo.grid.ny() != cfg.cells[1]))
      throw ValidationError("topography: raster shape does not match the grid block");
  }

  // ESRI headers carry the physical geometry; CSV rasters adopt the grid block.
  Grid grid{};
  try {
    if (esri) {
      grid = topo.grid;
    } else {
      grid = n == 2 ? Grid::rect(cfg.cells[0], cfg.cells[1], cfg.extent[0], cfg.extent[1],
                                 cfg.origin[0], cfg.origin[1])
                    : Grid::line(cfg.cells[0], cfg.extent[0], cfg.origin[0]);
      if (topo_from_file) topo = regrid(topo, grid);
    }
  } catch (const DomainError& e) {
    throw ValidationError(std::string("grid: ") + e.what());
  }
  p.grid = grid;

  p.topography = topo_from_file
                     ? topo
                     : topography_preset_field(grid, cfg.topography_preset,
                                               cfg.topography_amplitude);

  if (!cfg.initial_file.empty()) {
    std::filesystem::path path(cfg.initial_file);
    if (path.is_relative()) path = std::filesystem::path(base_dir) / path;
    p.initial_depth = regrid(read_csv_field(path.string()), grid);
  } else if (cfg.initial_preset == "dam_break") {
    p.initial_depth =
        initial_dam_break(grid, p.topography, cfg.dam_left, cfg.dam_right, cfg.dam_interface);
  } else if (cfg.initial_preset == "lake_at_rest") {
    p.initial_depth = initial_lake_at_rest(grid, p.topography, cfg.lake_surface);
  } else if (cfg.initial_preset == "bump") {
    p.initial_depth = initial_bump(grid, cfg.bump_height, cfg.bump_radius);
  } else if (cfg.initial_preset == "dry") {
    p.initial_depth = ScalarField::zeros(grid);
  } else if (cfg.initial_preset == "barenblatt") {
    p.initial_depth = initial_barenblatt(grid, cfg.barenblatt_mass, cfg.barenblatt_time);
  } else {
    throw ValidationError("initial: unknown preset '" + cfg.initial_preset + "'");
  }

  p.source = SourceTerm::constant(cfg.source_rate);
  p.boundary = cfg.boundary == "dirichlet_zero_v" ? BoundaryCondition::DirichletZeroV
                                                  : BoundaryCondition::ZeroFlux;
  p.eps = cfg.eps;
  p.horizon = cfg.horizon;

  std::vector<std::string> bad = validate_problem(p);
  if (!bad.empty()) {
    std::string all = "invalid scenario:";
    for (const std::string& s : bad) all += " [" + s + "]";
    throw ValidationError(all);
  }
  return p;
}

StepControl step_control(const ScenarioConfig& cfg) {
  StepControl ctrl;
  ctrl.cfl = cfg.cfl;
  ctrl.dt_min = cfg.dt_min;
  ctrl.dt_max = cfg.dt_max;
  ctrl.scheme = cfg.scheme == "semi_implicit" ? Scheme::SemiImplicit : Scheme::Explicit;
  ctrl.max_newton_iters = cfg.max_newton_iters;
  ctrl.newton_tol = cfg.newton_tol;
  ctrl.store_every = cfg.store_every;
  return ctrl;
}

}  // namespace dsw
