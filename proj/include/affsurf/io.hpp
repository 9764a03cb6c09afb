#pragma once

#include <string>

#include "affsurf/grid.hpp"
#include "affsurf/invariants.hpp"

namespace affsurf {

struct VerificationReport; // verify.hpp

// Full-precision decimal (17 significant digits, lossless for binary64).
std::string format_full(double x);

// Write via a temp file in the same directory plus rename.
void write_text_atomic(const std::string& path, const std::string& content);

// Surface-grid file, format tag "affine-surface-grid/1".
void write_grid_json(const SurfaceGrid& grid, const std::string& path);
SurfaceGrid read_grid_json(const std::string& path);

// Wavefront OBJ: one vertex per grid point (row-major, v outer), each grid
// quad split into two counter-clockwise triangles.
void write_obj(const SurfaceGrid& grid, const std::string& path);

// Point table: header u,v,x,y,z then one row per grid point.
void write_csv(const SurfaceGrid& grid, const std::string& path);

// Invariant reports.
void write_analysis_json(const AnalysisResult& res, const std::string& path);
void write_analysis_csv(const AnalysisResult& res, const std::string& path);

void write_verification_json(const VerificationReport& report, const std::string& path);

} // namespace affsurf
