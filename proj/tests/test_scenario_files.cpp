#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "dsw/errors.hpp"
#include "dsw/scenario.hpp"
#include "dsw/stepping.hpp"

namespace fs = std::filesystem;

TEST_SUITE("scenario") {

TEST_CASE("topography from an esri raster defines the grid geometry") {
  fs::path dir = fs::temp_directory_path() / "dsw_scn_files";
  fs::create_directories(dir);
  {
    std::ofstream out(dir / "hill.asc");
    out << "ncols 8\nnrows 6\nxllcorner 2.0\nyllcorner -1.0\ncellsize 0.25\n";
    for (int r = 0; r < 6; ++r) {
      for (int c = 0; c < 8; ++c) out << 0.01 * (r + c) << " ";
      out << "\n";
    }
  }
  {
    std::ofstream out(dir / "scn.json");
    out << R"({
      "parameters": {"alpha": 1.0, "gamma": 0.5},
      "grid": {"cells": [8, 6]},
      "topography": {"file": "hill.asc", "format": "esri_ascii"},
      "initial": {"preset": "lake_at_rest", "surface": 1.0},
      "stepping": {"T": 0.001, "eps": 0.0}
    })";
  }
  dsw::ScenarioConfig cfg = dsw::load_config((dir / "scn.json").string());
  dsw::Problem p = dsw::assemble_problem(cfg, dir.string());
  CHECK(p.grid.n == 2);
  CHECK(p.grid.origin[0] == doctest::Approx(2.0));
  CHECK(p.grid.origin[1] == doctest::Approx(-1.0));
  CHECK(p.grid.extent[0] == doctest::Approx(2.0));
  CHECK(dsw::validate_problem(p).empty());
  fs::remove_all(dir);
}

TEST_CASE("topography from csv adopts the grid block geometry") {
  fs::path dir = fs::temp_directory_path() / "dsw_scn_csv";
  fs::create_directories(dir);
  {
    std::ofstream out(dir / "profile.csv");
    for (int i = 0; i < 16; ++i) out << 0.002 * i << (i + 1 < 16 ? "," : "\n");
  }
  {
    std::ofstream out(dir / "scn.json");
    out << R"({
      "parameters": {"alpha": 1.0, "gamma": 0.5},
      "grid": {"cells": [16], "extent": [4.0], "origin": [-2.0]},
      "topography": {"file": "profile.csv", "format": "csv"},
      "initial": {"preset": "dam_break", "interface": 0.0},
      "stepping": {"T": 0.001, "eps": 1e-2}
    })";
  }
  dsw::Problem p = dsw::assemble_problem(dsw::load_config((dir / "scn.json").string()),
                                         dir.string());
  CHECK(p.grid.extent[0] == doctest::Approx(4.0));
  CHECK(p.topography.at(3) == doctest::Approx(0.006));
  CHECK(dsw::validate_problem(p).empty());

  // cell-count mismatch is rejected
  {
    std::ofstream out(dir / "scn_bad.json");
    out << R"({
      "parameters": {"alpha": 1.0, "gamma": 0.5},
      "grid": {"cells": [8]},
      "topography": {"file": "profile.csv", "format": "csv"},
      "initial": {"preset": "dry"},
      "stepping": {"T": 0.001}
    })";
  }
  CHECK_THROWS_AS(dsw::assemble_problem(
                      dsw::load_config((dir / "scn_bad.json").string()), dir.string()),
                  dsw::ValidationError);
  fs::remove_all(dir);
}

TEST_CASE("every shipped scenario runs to its horizon") {
  for (const auto& entry : fs::directory_iterator(DSW_CONFIG_DIR)) {
    if (entry.path().extension() != ".json") continue;
    CAPTURE(entry.path().string());
    dsw::ScenarioConfig cfg = dsw::load_config(entry.path().string());
    dsw::Problem p = dsw::assemble_problem(cfg, entry.path().parent_path().string());
    dsw::SpaceTimeSolution sol = dsw::run(p, dsw::step_control(cfg));
    CHECK(sol.final_time() == doctest::Approx(cfg.horizon).epsilon(1e-12));
    CHECK(dsw::field_min(sol.states.back()) >= 0.0);
  }
}

}
