#include "dsw/snapshot.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "json.hpp"

#include "dsw/errors.hpp"
#include "dsw/raster.hpp"

namespace dsw {

namespace fs = std::filesystem;
using nlohmann::json;

void write_snapshots(const SpaceTimeSolution& sol, const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory: " + dir);

  const Grid& g = sol.problem.grid;
  json manifest;
  manifest["grid"] = {{"n", g.n},
                      {"cells", g.n == 2 ? std::vector<int>{g.nx(), g.ny()}
                                         : std::vector<int>{g.nx()}},
                      {"extent", g.n == 2 ? std::vector<double>{g.extent[0], g.extent[1]}
                                          : std::vector<double>{g.extent[0]}},
                      {"origin", g.n == 2 ? std::vector<double>{g.origin[0], g.origin[1]}
                                          : std::vector<double>{g.origin[0]}}};
  manifest["times"] = sol.times;

  json list = json::array();
  for (std::size_t s = 0; s < sol.states.size(); ++s) {
    char vname[32], uname[32];
    std::snprintf(vname, sizeof vname, "v_%06zu.csv", s);
    std::snprintf(uname, sizeof uname, "u_%06zu.csv", s);
    write_csv_field((fs::path(dir) / vname).string(), sol.states[s]);
    ScalarField u = sol.states[s];
    for (std::size_t k = 0; k < u.values.size(); ++k)
      u.values[k] += sol.problem.topography.values[k];
    write_csv_field((fs::path(dir) / uname).string(), u);
    list.push_back({{"t", sol.times[s]}, {"v", vname}, {"u", uname}});
  }
  manifest["snapshots"] = list;

  std::ofstream mout(fs::path(dir) / "manifest.json");
  if (!mout) throw IoError("cannot write manifest in " + dir);
  mout << manifest.dump(2) << "\n";

  std::FILE* diag = std::fopen((fs::path(dir) / "diagnostics.csv").string().c_str(), "w");
  if (!diag) throw IoError("cannot write diagnostics in " + dir);
  std::fprintf(diag, "t,dt,mass,clipped_mass,max_v\n");
  for (const StepDiagnostics& d : sol.diagnostics)
    std::fprintf(diag, "%.17g,%.17g,%.17g,%.17g,%.17g\n", d.t, d.dt, d.mass,
                 d.clipped_mass, d.max_depth);
  std::fclose(diag);
}

SpaceTimeSolution read_snapshots(const std::string& dir, const Problem& problem) {
  std::ifstream min(fs::path(dir) / "manifest.json");
  if (!min) throw IoError("cannot open manifest in " + dir);
  json manifest;
  try {
    manifest = json::parse(min);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("manifest parse error: ") + e.what());
  }

  SpaceTimeSolution sol;
  sol.problem = problem;
  try {
    const json& gj = manifest.at("grid");
    if (gj.at("n").get<int>() != problem.grid.n ||
        gj.at("cells")[0].get<int>() != problem.grid.nx() ||
        (problem.grid.n == 2 && gj.at("cells")[1].get<int>() != problem.grid.ny()))
      throw IoError("snapshot grid does not match the scenario grid");
    sol.times = manifest.at("times").get<std::vector<double>>();
    for (const auto& entry : manifest.at("snapshots")) {
      ScalarField f = read_csv_field((fs::path(dir) / entry.at("v").get<std::string>()).string());
      if (f.grid.cell_count() != problem.grid.cell_count() ||
          f.grid.nx() != problem.grid.nx())
        throw IoError("snapshot field shape does not match the scenario grid");
      sol.states.push_back(regrid(f, problem.grid));
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("manifest structure error: ") + e.what());
  }
  if (sol.states.size() != sol.times.size())
    throw IoError("manifest times and snapshot count disagree");
  for (std::size_t j = 1; j < sol.times.size(); ++j)
    if (!(sol.times[j] > sol.times[j - 1]))
      throw IoError("snapshot times are not strictly increasing");
  for (const ScalarField& f : sol.states)
    if (!field_finite(f)) throw IoError("snapshot contains non-finite values");
  return sol;
}

}  // namespace dsw
