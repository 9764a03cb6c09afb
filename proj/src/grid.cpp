#include "affsurf/grid.hpp"

#include <algorithm>
#include <cmath>

#include "affsurf/errors.hpp"

namespace affsurf {

void GridSpec::validate() const {
    if (!(u_min < u_max) || !(v_min < v_max))
        throw ArgumentError("empty parameter range");
    if (nu < 2 || nv < 2)
        throw ArgumentError("grid needs at least 2 samples per direction");
}

namespace {

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> r(n);
    const double step = (hi - lo) / (n - 1);
    for (int i = 0; i < n; ++i) r[i] = lo + i * step;
    r.back() = hi;
    return r;
}

} // namespace

std::vector<double> GridSpec::u_values() const { return linspace(u_min, u_max, nu); }
std::vector<double> GridSpec::v_values() const { return linspace(v_min, v_max, nv); }

void SurfaceGrid::validate() const {
    const std::size_t n = u.size() * v.size();
    if (u.size() < 2 || v.size() < 2)
        throw FormatError("grid needs at least 2 samples per direction");
    if (points.size() != n)
        throw FormatError("points array shape inconsistent with u/v lengths");
    const bool any_frames = !e1.empty() || !e2.empty() || !e3.empty();
    if (any_frames && (e1.size() != n || e2.size() != n || e3.size() != n))
        throw FormatError("frame arrays shape inconsistent with grid");
    for (const Vec3& p : points)
        if (!all_finite(p)) throw FormatError("non-finite grid point");
    if (any_frames)
        for (std::size_t i = 0; i < n; ++i)
            if (!all_finite(e1[i]) || !all_finite(e2[i]) || !all_finite(e3[i]))
                throw FormatError("non-finite frame vector");
}

double SurfaceGrid::uniform_step(const std::vector<double>& axis, const char* what) {
    if (axis.size() < 2) throw ArgumentError(std::string(what) + " axis too short");
    const double step = (axis.back() - axis.front()) / (axis.size() - 1);
    if (!(step > 0.0)) throw ArgumentError(std::string(what) + " axis not increasing");
    const double tol = 1e-9 * std::max(std::abs(axis.back() - axis.front()), 1.0);
    for (std::size_t i = 0; i + 1 < axis.size(); ++i)
        if (std::abs(axis[i + 1] - axis[i] - step) > tol)
            throw ArgumentError(std::string(what) + " axis is not uniformly spaced");
    return step;
}

SurfaceGrid apply_equiaffine(const SurfaceGrid& g, const Mat3& A, const Vec3& b) {
    if (std::abs(det(A) - 1.0) > 1e-9)
        throw ArgumentError("equiaffine map requires det A = 1");
    SurfaceGrid r = g;
    for (Vec3& p : r.points) p = A * p + b;
    for (Vec3& e : r.e1) e = A * e;
    for (Vec3& e : r.e2) e = A * e;
    for (Vec3& e : r.e3) e = A * e;
    return r;
}

std::vector<double> fd_weights(double x0, const std::vector<double>& nodes, int m) {
    // Fornberg (1988): weights for derivatives 0..m at x0 on arbitrary nodes.
    const int n = static_cast<int>(nodes.size());
    if (n < m + 1) throw ArgumentError("not enough nodes for requested derivative");
    std::vector<std::vector<double>> c(n, std::vector<double>(m + 1, 0.0));
    double c1 = 1.0;
    double c4 = nodes[0] - x0;
    c[0][0] = 1.0;
    for (int i = 1; i < n; ++i) {
        const int mn = std::min(i, m);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = nodes[i] - x0;
        for (int j = 0; j < i; ++j) {
            const double c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k)
                c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(n);
    for (int i = 0; i < n; ++i) w[i] = c[i][m];
    return w;
}

AxisStencils::AxisStencils(int n, double step, int d1_window) : n_(n) {
    if (n < 5) throw ArgumentError("grid too coarse: need at least 5 points per direction");
    if (d1_window < 3) throw ArgumentError("first-derivative window too small");
    w1_.resize(n); w2_.resize(n);
    s1_.resize(n); s2_.resize(n);
    auto build = [&](int window, int m, std::vector<std::vector<double>>& w, std::vector<int>& s) {
        const int win = std::min(window, n);
        for (int i = 0; i < n; ++i) {
            int start = std::clamp(i - win / 2, 0, n - win);
            std::vector<double> nodes(win);
            for (int k = 0; k < win; ++k) nodes[k] = (start + k) * step;
            w[i] = fd_weights(i * step, nodes, m);
            s[i] = start;
        }
    };
    build(d1_window, 1, w1_, s1_);
    build(7, 2, w2_, s2_);
}

const std::vector<double>& AxisStencils::weights(int m, int i) const {
    return m == 1 ? w1_[i] : w2_[i];
}

int AxisStencils::window_start(int m, int i) const {
    return m == 1 ? s1_[i] : s2_[i];
}

GridField::GridField(const AxisStencils* su, const AxisStencils* sv, std::vector<double> samples)
    : su_(su), sv_(sv), data_(std::move(samples)) {
    if (data_.size() != static_cast<std::size_t>(su_->n()) * sv_->n())
        throw ArgumentError("field samples shape mismatch");
}

GridField GridField::d_u(int m) const {
    std::vector<double> out(data_.size());
    for (int iv = 0; iv < nv(); ++iv) {
        const std::size_t row = static_cast<std::size_t>(iv) * nu();
        for (int iu = 0; iu < nu(); ++iu) {
            const auto& w = su_->weights(m, iu);
            const int s = su_->window_start(m, iu);
            double acc = 0.0;
            for (std::size_t k = 0; k < w.size(); ++k) acc += w[k] * data_[row + s + k];
            out[row + iu] = acc;
        }
    }
    return GridField(su_, sv_, std::move(out));
}

GridField GridField::d_v(int m) const {
    std::vector<double> out(data_.size());
    for (int iu = 0; iu < nu(); ++iu) {
        for (int iv = 0; iv < nv(); ++iv) {
            const auto& w = sv_->weights(m, iv);
            const int s = sv_->window_start(m, iv);
            double acc = 0.0;
            for (std::size_t k = 0; k < w.size(); ++k)
                acc += w[k] * data_[static_cast<std::size_t>(s + k) * nu() + iu];
            out[static_cast<std::size_t>(iv) * nu() + iu] = acc;
        }
    }
    return GridField(su_, sv_, std::move(out));
}

} // namespace affsurf
