#pragma once

#include <optional>
#include <string>
#include <vector>

#include "affsurf/expr.hpp"
#include "affsurf/grid.hpp"
#include "affsurf/invariants.hpp"

namespace affsurf {

struct CheckResult {
    std::string name;
    double max_residual = 0.0;
    double tol = 0.0;
    bool passed = false;
    bool counted = true; // informational entries do not affect the verdict
    double worst_u = 0.0, worst_v = 0.0;
    std::string note;
};

struct VerificationReport {
    std::vector<CheckResult> checks;
    bool passed() const;
    const CheckResult* find(const std::string& name) const;
};

struct VerifyOptions {
    std::optional<Expr> ell, f; // enables the Maurer-Cartan normal-form check
    double tol = 1e-5;          // flat/minimal/asymptotic threshold (grid mode)
    double ruled_tol = 1e-9;
    double improper_tol = 1e-6; // affine-normal constancy threshold
    double mc_tol = 1e-6;       // normal-form entry threshold
};

// Flatness + minimality through the invariant analyzer (finite differences
// for grids, exact jets for expression surfaces). Produces the checks
// "hyperbolic", "asymptotic", "affine-flat", "affine-minimal".
std::vector<CheckResult> verify_flat_minimal(const SurfaceGrid& grid, double tol);
std::vector<CheckResult> verify_flat_minimal(const Expr& x, const Expr& y, const Expr& z,
                                             const GridSpec& spec, double tol);

// Second difference of x along u over interior points.
CheckResult verify_ruled(const SurfaceGrid& grid, double tol);

// All 18 Maurer-Cartan coefficient entries of the stored frame field against
// the generated normal form:
//   Au = [[0,0,0],[0,0,0],[0,1,0]],  Av = [[0, u ell + f, ell],[0,0,0],[1,0,0]].
std::vector<CheckResult> verify_mc_normal_form(const SurfaceGrid& grid, const Expr& ell,
                                               const Expr& f, double tol);

// det[e1,e2,e3] = 1 across the grid (stored frames).
CheckResult verify_frames_unimodular(const SurfaceGrid& grid, double tol);

struct ImproperDetection {
    bool improper = false;
    double max_e3_deviation = 0.0;
};
// Constancy of the stored affine normal across the grid.
ImproperDetection detect_improper_sphere(const SurfaceGrid& grid, double tol);
// Same test on analyzer-computed affine normals.
ImproperDetection detect_improper_from_analysis(const AnalysisResult& res, double tol);

// Generate the same surface through the closed form and through the profile
// ODE; returns the max pointwise deviation.
double cross_check_closed_form(const std::string& preset, double a, const Expr* f,
                               const GridSpec& spec, double rk_step);

// Full suite over a grid file: flat/minimal, ruled, frame checks when frames
// are present, normal form when ell/f are supplied, improper-sphere note.
VerificationReport verify_grid(const SurfaceGrid& grid, const VerifyOptions& opt);

std::string format_table(const VerificationReport& report);

} // namespace affsurf
