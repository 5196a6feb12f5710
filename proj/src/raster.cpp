#include "dsw/raster.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "dsw/errors.hpp"

namespace dsw {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

// strtod wrapper that accepts subnormals (stod raises out_of_range on the
// ERANGE underflow they trigger) and rejects trailing garbage and overflow.
bool parse_double(const std::string& tok, double& out) {
  const char* s = tok.c_str();
  char* end = nullptr;
  errno = 0;
  out = std::strtod(s, &end);
  if (end == s || *end != '\0') return false;
  if (errno == ERANGE && (out == HUGE_VAL || out == -HUGE_VAL)) return false;
  return true;
}

}  // namespace

ScalarField read_esri_ascii(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open raster file: " + path);

  long ncols = -1, nrows = -1;
  double xll = 0.0, yll = 0.0, cellsize = -1.0;
  double nodata = -9999.0;
  bool has_nodata = false, x_is_center = false, y_is_center = false;

  // Header: key value pairs until the first purely numeric token.
  std::string key;
  while (in >> key) {
    std::string k = lower(key);
    if (k == "ncols" || k == "nrows" || k == "xllcorner" || k == "yllcorner" ||
        k == "xllcenter" || k == "yllcenter" || k == "cellsize" || k == "nodata_value") {
      double val;
      if (!(in >> val)) throw ParseError("esri header: missing value for " + key);
      if (k == "ncols") ncols = static_cast<long>(val);
      else if (k == "nrows") nrows = static_cast<long>(val);
      else if (k == "xllcorner" || k == "xllcenter") { xll = val; x_is_center = k == "xllcenter"; }
      else if (k == "yllcorner" || k == "yllcenter") { yll = val; y_is_center = k == "yllcenter"; }
      else if (k == "cellsize") cellsize = val;
      else { nodata = val; has_nodata = true; }
    } else {
      break;  // first data token already consumed into `key`
    }
  }
  if (ncols < 4 || nrows < 4)
    throw ParseError("esri header: ncols/nrows missing or below the 4-cell minimum");
  if (!(cellsize > 0.0)) throw ParseError("esri header: cellsize missing or nonpositive");
  if (x_is_center) xll -= 0.5 * cellsize;
  if (y_is_center) yll -= 0.5 * cellsize;

  Grid g = Grid::rect(static_cast<int>(ncols), static_cast<int>(nrows),
                      cellsize * ncols, cellsize * nrows, xll, yll);
  ScalarField f = ScalarField::zeros(g);

  // `key` holds the first data token; rows in the file run north to south.
  std::size_t count = 0;
  const std::size_t total = g.cell_count();
  std::string token = key;
  while (true) {
    double val;
    if (!parse_double(token, val))
      throw ParseError("esri data: non-numeric token '" + token + "'");
    if (count >= total) throw ParseError("esri data: more values than ncols*nrows");
    std::size_t r = count / ncols, c = count % ncols;
    int iy = static_cast<int>(nrows - 1 - r);
    if (has_nodata && val == nodata) {
      std::ostringstream why;
      why << "esri data: NODATA cell at row " << r << " col " << c;
      throw ParseError(why.str());
    }
    f.at(static_cast<int>(c), iy) = val;
    ++count;
    if (!(in >> token)) break;
  }
  if (count != total) throw ParseError("esri data: fewer values than ncols*nrows");
  return f;
}

ScalarField read_csv_field(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open csv file: " + path);

  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r\n,") == std::string::npos) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      double val;
      if (!parse_double(cell, val)) {
        std::ostringstream why;
        why << "csv line " << lineno << ": non-numeric cell '" << cell << "'";
        throw ParseError(why.str());
      }
      row.push_back(val);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      std::ostringstream why;
      why << "csv line " << lineno << ": ragged row (" << row.size() << " vs "
          << rows.front().size() << " columns)";
      throw ParseError(why.str());
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("csv file is empty: " + path);

  const int nx = static_cast<int>(rows.front().size());
  const int ny = static_cast<int>(rows.size());
  if (ny == 1) {
    Grid g = Grid::line(nx, 1.0);
    ScalarField f = ScalarField::zeros(g);
    for (int i = 0; i < nx; ++i) f.at(i) = rows[0][i];
    return f;
  }
  Grid g = Grid::rect(nx, ny, 1.0, static_cast<double>(ny) / nx);
  ScalarField f = ScalarField::zeros(g);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) f.at(i, j) = rows[j][i];
  return f;
}

void write_csv_field(const std::string& path, const ScalarField& f) {
  std::FILE* out = std::fopen(path.c_str(), "w");
  if (!out) throw IoError("cannot write csv file: " + path);
  const int nx = f.grid.nx(), ny = f.grid.ny();
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i)
      std::fprintf(out, "%.17g%s", f.at(i, j), i + 1 < nx ? "," : "\n");
  }
  std::fclose(out);
}

ScalarField regrid(const ScalarField& f, const Grid& g) {
  if (f.grid.cell_count() != g.cell_count() || f.grid.nx() != g.nx())
    throw ValidationError("regrid: cell counts do not match");
  return ScalarField{g, f.values};
}

}  // namespace dsw
