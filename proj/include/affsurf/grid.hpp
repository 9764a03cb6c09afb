#pragma once

#include <optional>
#include <string>
#include <vector>

#include "affsurf/linalg.hpp"

namespace affsurf {

// Rectangular parameter domain with sample counts.
struct GridSpec {
    double u_min = -1.0, u_max = 1.0;
    double v_min = -1.0, v_max = 1.0;
    int nu = 2, nv = 2;

    void validate() const;
    std::vector<double> u_values() const;
    std::vector<double> v_values() const;
};

struct GridMeta {
    std::optional<std::string> ell, f, preset;
    std::optional<double> rk_step;
    std::string generated_by;
};

// Sampled parametrization x(u,v) on a rectangular grid, row-major with v as
// the outer index: flat index = iv * nu + iu. Frame vector arrays, when
// present, share that layout.
struct SurfaceGrid {
    std::vector<double> u, v;
    std::vector<Vec3> points;
    std::vector<Vec3> e1, e2, e3; // all empty or all full
    GridMeta meta;

    int nu() const { return static_cast<int>(u.size()); }
    int nv() const { return static_cast<int>(v.size()); }
    bool has_frames() const { return !e1.empty(); }
    std::size_t idx(int iu, int iv) const { return static_cast<std::size_t>(iv) * u.size() + iu; }
    const Vec3& at(int iu, int iv) const { return points[idx(iu, iv)]; }
    Vec3& at(int iu, int iv) { return points[idx(iu, iv)]; }

    // Shape consistency + finite entries; throws FormatError.
    void validate() const;
    // Uniform spacing of an axis within 1e-9 relative; throws ArgumentError
    // naming `what` when violated. Returns the step.
    static double uniform_step(const std::vector<double>& axis, const char* what);
};

// Apply the volume-preserving affine map x -> A x + b to points and frames
// (frame vectors transform without the translation).
SurfaceGrid apply_equiaffine(const SurfaceGrid& g, const Mat3& A, const Vec3& b);

// Finite-difference weights for the m-th derivative at x0 from the given
// nodes (Fornberg's algorithm); exact for polynomials of degree < #nodes.
std::vector<double> fd_weights(double x0, const std::vector<double>& nodes, int m);

// Finite-difference engine over one uniform axis: windowed stencils, centered
// where possible, one-sided near the boundary. First derivatives use
// `d1_window`-point windows (5 -> 4th order), second derivatives 7-point
// windows, both clamped to the axis length.
class AxisStencils {
public:
    AxisStencils(int n, double step, int d1_window = 5);

    int n() const { return n_; }
    // weights/window start for the 1st (m=1) or 2nd (m=2) derivative at i.
    const std::vector<double>& weights(int m, int i) const;
    int window_start(int m, int i) const;

private:
    int n_ = 0;
    std::vector<std::vector<double>> w1_, w2_;
    std::vector<int> s1_, s2_;
};

// Scalar field sampled on a uniform nu x nv grid (row-major, v outer).
// Produces derivative fields of the samples.
class GridField {
public:
    GridField(const AxisStencils* su, const AxisStencils* sv, std::vector<double> samples);

    const std::vector<double>& samples() const { return data_; }
    double at(int iu, int iv) const { return data_[static_cast<std::size_t>(iv) * nu() + iu]; }

    GridField d_u(int m = 1) const;
    GridField d_v(int m = 1) const;

private:
    const AxisStencils* su_;
    const AxisStencils* sv_;
    std::vector<double> data_;
    int nu() const { return su_->n(); }
    int nv() const { return sv_->n(); }
};

} // namespace affsurf
