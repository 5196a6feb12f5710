#pragma once

#include <string>

#include "dsw/problem.hpp"

namespace dsw {

// Writes snapshots (CSV per stored state, for v and the surface u = v + z),
// a JSON manifest with times and grid metadata, and a per-step diagnostics
// CSV (t, dt, mass, clipped_mass, max_v). All doubles at 17 significant
// digits, so reloaded fields reproduce the run bit-exactly.
void write_snapshots(const SpaceTimeSolution& sol, const std::string& dir);

// Rebuilds a solution from a snapshot directory written by write_snapshots.
// The problem supplies grid, topography and parameters; mismatched or
// corrupted files raise IoError/ParseError.
SpaceTimeSolution read_snapshots(const std::string& dir, const Problem& problem);

}  // namespace dsw
