#pragma once

#include <string>

#include "dsw/grid.hpp"

namespace dsw {

// Reads an ESRI ASCII grid (.asc): ncols/nrows/xllcorner/yllcorner/cellsize
// header, optional NODATA_value, then row-major values starting with the
// northernmost row. Cells equal to the NODATA value are rejected with a
// ParseError. Returns a 2D field whose grid geometry comes from the header.
ScalarField read_esri_ascii(const std::string& path);

// Reads a plain row-major CSV of values. A single row yields a 1D field,
// several rows a 2D field. Grid extents default to the unit box scaled by
// the cell counts' aspect; callers that know the physical geometry attach it
// afterwards via regrid.
ScalarField read_csv_field(const std::string& path);

// Writes a field as row-major CSV with 17 significant digits (value-preserving
// round trip for doubles).
void write_csv_field(const std::string& path, const ScalarField& f);

// Replaces the grid geometry of a field, keeping its values. Cell counts must
// match; throws ValidationError otherwise.
ScalarField regrid(const ScalarField& f, const Grid& g);

}  // namespace dsw
