#include "affsurf/generator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "affsurf/errors.hpp"

namespace affsurf {

namespace {

std::string format_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

template <std::size_t N>
bool finite_state(const std::array<double, N>& y) {
    for (double c : y)
        if (!std::isfinite(c)) return false;
    return true;
}

template <std::size_t N, class Rhs>
std::array<double, N> rk4_step(const Rhs& rhs, double v, const std::array<double, N>& y,
                               double h) {
    const auto k1 = rhs(v, y);
    std::array<double, N> t;
    for (std::size_t i = 0; i < N; ++i) t[i] = y[i] + 0.5 * h * k1[i];
    const auto k2 = rhs(v + 0.5 * h, t);
    for (std::size_t i = 0; i < N; ++i) t[i] = y[i] + 0.5 * h * k2[i];
    const auto k3 = rhs(v + 0.5 * h, t);
    for (std::size_t i = 0; i < N; ++i) t[i] = y[i] + h * k3[i];
    const auto k4 = rhs(v + h, t);
    std::array<double, N> out;
    for (std::size_t i = 0; i < N; ++i)
        out[i] = y[i] + (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return out;
}

// Advance to `target` with fixed steps of magnitude `step`, subdividing the
// final step to land exactly.
template <std::size_t N, class Rhs>
void rk4_advance_to(const Rhs& rhs, double& v, std::array<double, N>& y, double target,
                    double step) {
    const double dir = target >= v ? 1.0 : -1.0;
    for (;;) {
        const double remaining = (target - v) * dir;
        if (remaining <= 0.0) break;
        const double h = dir * std::min(remaining, step);
        y = rk4_step<N>(rhs, v, y, h);
        if (!finite_state(y)) throw DivergenceError(v + h);
        if (remaining <= step) {
            v = target;
            break;
        }
        v += h;
    }
}

// Integrate from v = 0 to every target (targets ascending), both directions.
template <std::size_t N, class Rhs>
std::vector<std::array<double, N>> integrate_from_zero(const Rhs& rhs,
                                                       const std::array<double, N>& y0,
                                                       const std::vector<double>& targets,
                                                       double step) {
    if (!(step > 0.0)) throw ArgumentError("rk_step must be positive");
    if (!std::is_sorted(targets.begin(), targets.end()))
        throw ArgumentError("v targets must be ascending");
    std::vector<std::array<double, N>> out(targets.size());

    // First index with target >= 0; everything before integrates downward.
    std::size_t split = 0;
    while (split < targets.size() && targets[split] < 0.0) ++split;

    double v = 0.0;
    std::array<double, N> y = y0;
    for (std::size_t i = split; i < targets.size(); ++i) {
        rk4_advance_to<N>(rhs, v, y, targets[i], step);
        out[i] = y;
    }
    v = 0.0;
    y = y0;
    for (std::size_t i = split; i-- > 0;) {
        rk4_advance_to<N>(rhs, v, y, targets[i], step);
        out[i] = y;
    }
    return out;
}

struct ProfileRhs {
    const Expr* ell;
    const Expr* f;
    // State layout: [xbar, e1, e2, e3], three components each.
    std::array<double, 12> operator()(double v, const std::array<double, 12>& y) const {
        const double lv = ell->value(0.0, v);
        const double fv = f->value(0.0, v);
        std::array<double, 12> d;
        for (int c = 0; c < 3; ++c) {
            d[c] = y[6 + c];           // xbar' = e2
            d[3 + c] = y[9 + c];       // e1'   = e3
            d[6 + c] = fv * y[3 + c];  // e2'   = f e1
            d[9 + c] = lv * y[3 + c];  // e3'   = ell e1
        }
        return d;
    }
};

Vec3 slice(const std::array<double, 12>& y, int block) {
    return {y[3 * block], y[3 * block + 1], y[3 * block + 2]};
}

} // namespace

void GeneratorInput::validate() const {
    grid.validate();
    if (!(rk_step > 0.0)) throw ArgumentError("rk_step must be positive");
    if (ell.empty() || f.empty()) throw ArgumentError("generator needs ell and f expressions");
    if (ell.depends_on_u() || f.depends_on_u())
        throw ArgumentError("ell and f must be functions of v only");
}

std::vector<ProfileSample> integrate_profile(const Expr& ell, const Expr& f,
                                             const std::vector<double>& v_targets,
                                             double rk_step) {
    if (ell.depends_on_u() || f.depends_on_u())
        throw ArgumentError("ell and f must be functions of v only");
    ProfileRhs rhs{&ell, &f};
    std::array<double, 12> y0{};
    y0[3] = 1.0;   // e1 = (1,0,0)
    y0[7] = 1.0;   // e2 = (0,1,0)
    y0[11] = 1.0;  // e3 = (0,0,1)
    const auto states = integrate_from_zero<12>(rhs, y0, v_targets, rk_step);
    std::vector<ProfileSample> samples(v_targets.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        samples[i].v = v_targets[i];
        samples[i].s = {slice(states[i], 0), slice(states[i], 1), slice(states[i], 2),
                        slice(states[i], 3)};
    }
    return samples;
}

SurfaceGrid extend_ruled(const std::vector<ProfileSample>& profile,
                         const std::vector<double>& u_values, bool with_frames) {
    SurfaceGrid g;
    g.u = u_values;
    g.v.reserve(profile.size());
    for (const ProfileSample& p : profile) g.v.push_back(p.v);
    const std::size_t n = g.u.size() * g.v.size();
    g.points.resize(n);
    if (with_frames) {
        g.e1.resize(n);
        g.e2.resize(n);
        g.e3.resize(n);
    }
    for (std::size_t iv = 0; iv < profile.size(); ++iv) {
        const ProfileState& s = profile[iv].s;
        for (std::size_t iu = 0; iu < g.u.size(); ++iu) {
            const double uu = g.u[iu];
            const std::size_t i = iv * g.u.size() + iu;
            g.points[i] = uu * s.e1 + s.xbar;
            if (with_frames) {
                g.e1[i] = s.e1;
                g.e2[i] = uu * s.e3 + s.e2;
                g.e3[i] = s.e3;
            }
        }
    }
    return g;
}

SurfaceGrid generate_surface(const GeneratorInput& input) {
    input.validate();
    const auto profile =
        integrate_profile(input.ell, input.f, input.grid.v_values(), input.rk_step);
    SurfaceGrid g = extend_ruled(profile, input.grid.u_values(), input.with_frames);
    g.meta.ell = input.ell.to_string();
    g.meta.f = input.f.to_string();
    g.meta.rk_step = input.rk_step;
    g.meta.generated_by = "affsurf";
    g.validate();
    return g;
}

namespace {

struct QuadratureRhs {
    const Expr* f;       // forcing
    double a;            // frequency parameter
    bool hyperbolic;     // cosh/sinh vs cos/sin weights
    // State [F, F', G, G']: F'' = f(v) c1(v), G'' = f(v) c3(v)/a.
    std::array<double, 4> operator()(double v, const std::array<double, 4>& y) const {
        const double fv = f ? f->value(0.0, v) : 0.0;
        const double c1 = hyperbolic ? std::cosh(a * v) : std::cos(a * v);
        const double c3 = hyperbolic ? std::sinh(a * v) : std::sin(a * v);
        return {y[1], fv * c1, y[3], fv * c3 / a};
    }
};

SurfaceGrid assemble_from_profile(const std::vector<ProfileSample>& profile,
                                  const GridSpec& spec, bool with_frames) {
    return extend_ruled(profile, spec.u_values(), with_frames);
}

} // namespace

bool is_known_preset(const std::string& name) {
    return name == "saddle" || name == "cubic" || name == "cosh" || name == "cos";
}

SurfaceGrid closed_form_preset(const std::string& name, double a, const Expr* f,
                               const GridSpec& spec, double rk_step, bool with_frames) {
    spec.validate();
    const std::vector<double> vs = spec.v_values();
    std::vector<ProfileSample> profile(vs.size());

    if (name == "saddle" || name == "cubic") {
        const double fconst = name == "saddle" ? 0.0 : 6.0;
        for (std::size_t i = 0; i < vs.size(); ++i) {
            const double v = vs[i];
            ProfileSample& p = profile[i];
            p.v = v;
            p.s.e1 = {1.0, 0.0, v};
            p.s.e3 = {0.0, 0.0, 1.0};
            // f constant: e2 = (f v, 1, f v^2 / 2), xbar = (f v^2/2, v, f v^3/6).
            p.s.e2 = {fconst * v, 1.0, fconst * v * v / 2.0};
            p.s.xbar = {fconst * v * v / 2.0, v, fconst * v * v * v / 6.0};
        }
        SurfaceGrid g = assemble_from_profile(profile, spec, with_frames);
        g.meta.preset = name;
        g.meta.ell = "0";
        g.meta.f = name == "saddle" ? "0" : "6";
        g.meta.generated_by = "affsurf";
        return g;
    }

    if (name == "cosh" || name == "cos") {
        if (a == 0.0) throw ArgumentError("preset '" + name + "' requires a != 0");
        const bool hyp = name == "cosh";
        const bool has_f = f && !f->empty();
        std::vector<std::array<double, 4>> quad(vs.size(), std::array<double, 4>{});
        if (has_f) {
            if (f->depends_on_u()) throw ArgumentError("f must be a function of v only");
            QuadratureRhs rhs{f, a, hyp};
            quad = integrate_from_zero<4>(rhs, {0.0, 0.0, 0.0, 0.0}, vs, rk_step);
        }
        for (std::size_t i = 0; i < vs.size(); ++i) {
            const double v = vs[i];
            const double c = hyp ? std::cosh(a * v) : std::cos(a * v);
            const double s = hyp ? std::sinh(a * v) : std::sin(a * v);
            ProfileSample& p = profile[i];
            p.v = v;
            p.s.e1 = {c, 0.0, s / a};
            p.s.e3 = {hyp ? a * s : -a * s, 0.0, c};
            p.s.e2 = {quad[i][1], 1.0, quad[i][3]};
            p.s.xbar = {quad[i][0], v, quad[i][2]};
        }
        SurfaceGrid g = assemble_from_profile(profile, spec, with_frames);
        g.meta.preset = name;
        g.meta.ell = format_number(hyp ? a * a : -a * a);
        g.meta.f = has_f ? f->to_string() : "0";
        if (has_f) g.meta.rk_step = rk_step;
        g.meta.generated_by = "affsurf";
        return g;
    }

    throw ArgumentError("unknown preset '" + name + "'");
}

std::vector<double> improper_sphere_phi(const SurfaceGrid& grid, double tol) {
    grid.validate();
    const int nu = grid.nu(), nv = grid.nv();
    std::vector<double> phi(nv);
    double worst = 0.0;
    double worst_u = 0.0, worst_v = 0.0;
    for (int iv = 0; iv < nv; ++iv) {
        const Vec3& p0 = grid.at(0, iv);
        phi[iv] = p0.z - p0.x * p0.y;
        for (int iu = 1; iu < nu; ++iu) {
            const Vec3& p = grid.at(iu, iv);
            const double d = std::abs(p.z - p.x * p.y - phi[iv]);
            if (d > worst) {
                worst = d;
                worst_u = grid.u[iu];
                worst_v = grid.v[iv];
            }
        }
    }
    if (worst > tol)
        throw GeometryError("Phi(v) = z - x*y depends on u (spread " +
                            std::to_string(worst) + " at u = " + std::to_string(worst_u) +
                            ", v = " + std::to_string(worst_v) +
                            "); the grid was not generated with ell = 0");
    return phi;
}

} // namespace affsurf
