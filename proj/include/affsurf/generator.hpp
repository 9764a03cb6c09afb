#pragma once

#include <array>
#include <string>
#include <vector>

#include "affsurf/expr.hpp"
#include "affsurf/grid.hpp"

namespace affsurf {

// Inputs for the ruled-surface generator: two free functions of v, the
// parameter window, and the fixed integrator step.
struct GeneratorInput {
    Expr ell, f;
    GridSpec grid;
    double rk_step = 1e-3;
    bool with_frames = true;

    void validate() const;
};

// Profile functions of v alone; the surface is x(u,v) = u e1(v) + xbar(v).
struct ProfileState {
    Vec3 xbar, e1, e2, e3;
};

struct ProfileSample {
    double v = 0.0;
    ProfileState s;
};

// Integrate the profile system
//   xbar' = e2,  e1' = e3,  e2' = f(v) e1,  e3' = ell(v) e1
// from v = 0 (identity initial frame at the origin) outward in both
// directions with classical fixed-step RK4, landing on every target exactly.
// `v_targets` must be ascending. Throws DivergenceError on non-finite state
// and DomainError when an expression leaves its domain.
std::vector<ProfileSample> integrate_profile(const Expr& ell, const Expr& f,
                                             const std::vector<double>& v_targets,
                                             double rk_step);

// Extend the profile along the straight rulings:
//   x = u e1 + xbar,  frame (e1, u e3 + e2, e3).
SurfaceGrid extend_ruled(const std::vector<ProfileSample>& profile,
                         const std::vector<double>& u_values, bool with_frames);

SurfaceGrid generate_surface(const GeneratorInput& input);

// Closed-form families: "saddle", "cubic" (graph examples), "cosh" / "cos"
// (constant ell = a^2 / -a^2, parameter a != 0, optional forcing f whose
// double quadratures run on the same RK4 core). No profile ODE involved.
SurfaceGrid closed_form_preset(const std::string& name, double a, const Expr* f,
                               const GridSpec& spec, double rk_step = 1e-3,
                               bool with_frames = true);

bool is_known_preset(const std::string& name);

// For a grid generated with ell = 0: samples of Phi(v) = z - x*y, which must
// be independent of u. Throws GeometryError when the u-spread exceeds `tol`.
std::vector<double> improper_sphere_phi(const SurfaceGrid& grid, double tol = 1e-9);

} // namespace affsurf
