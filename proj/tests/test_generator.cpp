#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "affsurf/generator.hpp"

using namespace affsurf;

namespace {

GeneratorInput make_input(const char* ell, const char* f, GridSpec spec,
                          double rk_step = 1e-3) {
    GeneratorInput in;
    in.ell = Expr::parse(ell);
    in.f = Expr::parse(f);
    in.grid = spec;
    in.rk_step = rk_step;
    return in;
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> r(n);
    for (int i = 0; i < n; ++i) r[i] = lo + i * (hi - lo) / (n - 1);
    return r;
}

} // namespace

TEST_CASE("profile with ell = f = 0 is the saddle ruling") {
    const auto prof = integrate_profile(Expr::parse("0"), Expr::parse("0"),
                                        linspace(-1.0, 1.0, 21), 1e-3);
    for (const ProfileSample& p : prof) {
        CHECK(norm(p.s.e1 - Vec3{1, 0, p.v}) < 1e-12);
        CHECK(norm(p.s.e2 - Vec3{0, 1, 0}) < 1e-12);
        CHECK(norm(p.s.e3 - Vec3{0, 0, 1}) < 1e-12);
        CHECK(norm(p.s.xbar - Vec3{0, p.v, 0}) < 1e-12);
    }
}

TEST_CASE("profile with constant positive ell matches the hyperbolic solution") {
    const double a = 3.0;
    const auto prof = integrate_profile(Expr::parse("9"), Expr::parse("0"),
                                        linspace(-1.0, 1.0, 41), 1e-3);
    for (const ProfileSample& p : prof) {
        const Vec3 expected{std::cosh(a * p.v), 0.0, std::sinh(a * p.v) / a};
        CHECK(norm(p.s.e1 - expected) < 1e-6);
        const Vec3 e3_expected{a * std::sinh(a * p.v), 0.0, std::cosh(a * p.v)};
        CHECK(norm(p.s.e3 - e3_expected) < 1e-6);
    }
}

TEST_CASE("profile with constant negative ell matches the oscillatory solution") {
    const double a = 3.0;
    const auto prof = integrate_profile(Expr::parse("-9"), Expr::parse("0"),
                                        linspace(-1.0, 1.0, 41), 1e-3);
    for (const ProfileSample& p : prof) {
        const Vec3 expected{std::cos(a * p.v), 0.0, std::sin(a * p.v) / a};
        CHECK(norm(p.s.e1 - expected) < 1e-6);
    }
}

TEST_CASE("ruled extension reproduces the closed-form examples") {
    GridSpec spec{-1, 1, -1, 1, 21, 21};
    const SurfaceGrid saddle = generate_surface(make_input("0", "0", spec));
    for (int iv = 0; iv < saddle.nv(); ++iv)
        for (int iu = 0; iu < saddle.nu(); ++iu) {
            const double u = saddle.u[iu], v = saddle.v[iv];
            CHECK(norm(saddle.at(iu, iv) - Vec3{u, v, u * v}) < 1e-12);
        }

    const SurfaceGrid cubic = generate_surface(make_input("0", "6", spec));
    for (int iv = 0; iv < cubic.nv(); ++iv)
        for (int iu = 0; iu < cubic.nu(); ++iu) {
            const double u = cubic.u[iu], v = cubic.v[iv];
            const Vec3 expected{u + 3 * v * v, v, u * v + v * v * v};
            CHECK(norm(cubic.at(iu, iv) - expected) < 1e-9);
        }

    const SurfaceGrid ruled9 = generate_surface(make_input("9", "0", spec));
    for (int iv = 0; iv < ruled9.nv(); ++iv)
        for (int iu = 0; iu < ruled9.nu(); ++iu) {
            const double u = ruled9.u[iu], v = ruled9.v[iv];
            const Vec3 expected{u * std::cosh(3 * v), v, u * std::sinh(3 * v) / 3};
            CHECK(norm(ruled9.at(iu, iv) - expected) < 1e-6);
        }
}

TEST_CASE("generated frames: e2 = u e3 + ebar2 and unimodularity along the profile") {
    GridSpec spec{-1, 1, -0.8, 0.8, 9, 33};
    const SurfaceGrid g = generate_surface(make_input("sin(v)", "v^2", spec));
    REQUIRE(g.has_frames());
    for (std::size_t i = 0; i < g.points.size(); ++i) {
        const double d = det3(g.e1[i], g.e2[i], g.e3[i]);
        CHECK(std::abs(d - 1.0) < 1e-8);
    }
}

TEST_CASE("second u-difference of any generated grid vanishes identically") {
    GridSpec spec{-2, 2, -0.5, 0.5, 17, 11};
    const SurfaceGrid g = generate_surface(make_input("cosh(2*v)", "3*v", spec));
    for (int iv = 0; iv < g.nv(); ++iv)
        for (int iu = 1; iu + 1 < g.nu(); ++iu) {
            const Vec3 d = g.at(iu + 1, iv) - 2.0 * g.at(iu, iv) + g.at(iu - 1, iv);
            CHECK(norm(d) <= 1e-12);
        }
}

TEST_CASE("Sturm-Liouville residual of the integrated ruling direction") {
    // ebar1'' = ell(v) ebar1, checked with a five-point second difference on
    // samples spaced at the integrator step.
    for (const char* ell : {"sin(v)", "9"}) {
        const double h = 1e-3;
        const int n = 1001; // v in [-0.5, 0.5] at the rk step
        const auto prof = integrate_profile(Expr::parse(ell), Expr::parse("v^2"),
                                            linspace(-0.5, 0.5, n), h);
        const Expr le = Expr::parse(ell);
        double worst = 0.0;
        for (int i = 2; i + 2 < n; ++i) {
            const auto& e1 = [&](int k) { return prof[k].s.e1; };
            const Vec3 second = (1.0 / (12 * h * h)) *
                                (-1.0 * e1(i + 2) + 16.0 * e1(i + 1) - 30.0 * e1(i) +
                                 16.0 * e1(i - 1) - 1.0 * e1(i - 2));
            const Vec3 rhs = le.value(0.0, prof[i].v) * e1(i);
            worst = std::max(worst, norm(second - rhs));
        }
        CHECK(worst <= 1e-6);
    }
}

TEST_CASE("RK4 order against the closed form") {
    GridSpec spec{0, 1, -1, 1, 2, 81};
    auto max_err = [&](double step) {
        const SurfaceGrid g = generate_surface(make_input("9", "0", spec, step));
        double worst = 0.0;
        for (int iv = 0; iv < g.nv(); ++iv)
            for (int iu = 0; iu < g.nu(); ++iu) {
                const double u = g.u[iu], v = g.v[iv];
                const Vec3 exact{u * std::cosh(3 * v), v, u * std::sinh(3 * v) / 3};
                worst = std::max(worst, norm(g.at(iu, iv) - exact));
            }
        return worst;
    };
    const double e1 = max_err(2e-3);
    const double e2 = max_err(1e-3);
    CHECK(e2 < 1e-6);
    const double ratio = e1 / e2;
    CHECK(ratio >= 12.0);
    CHECK(ratio <= 20.0);
}

TEST_CASE("determinism: identical inputs give bit-identical grids") {
    GridSpec spec{-1, 1, -0.7, 0.9, 7, 19};
    const SurfaceGrid a = generate_surface(make_input("cosh(v)", "sin(2*v)", spec));
    const SurfaceGrid b = generate_surface(make_input("cosh(v)", "sin(2*v)", spec));
    REQUIRE(a.points.size() == b.points.size());
    for (std::size_t i = 0; i < a.points.size(); ++i) {
        CHECK(a.points[i].x == b.points[i].x);
        CHECK(a.points[i].y == b.points[i].y);
        CHECK(a.points[i].z == b.points[i].z);
    }
}

TEST_CASE("v-range away from zero still anchors at the initial conditions") {
    GridSpec spec{0, 1, 2.0, 3.0, 2, 11};
    const SurfaceGrid g = generate_surface(make_input("9", "0", spec));
    for (int iv = 0; iv < g.nv(); ++iv) {
        const double v = g.v[iv];
        const Vec3 exact{std::cosh(3 * v), v, std::sinh(3 * v) / 3};
        CHECK(norm(g.at(1, iv) - Vec3{exact.x, v, exact.z}) < 2e-4 * std::cosh(3 * v));
    }
}

TEST_CASE("presets evaluate their closed forms") {
    GridSpec spec{0, 2, 0, 3, 3, 4}; // u in {0,1,2}, v in {0,1,2,3}
    const SurfaceGrid saddle = closed_form_preset("saddle", 0.0, nullptr, spec);
    CHECK(norm(saddle.at(2, 3) - Vec3{2, 3, 6}) < 1e-15);
    CHECK(saddle.meta.preset.value() == "saddle");

    GridSpec origin{0, 1, -1, 0, 2, 2}; // contains (1, 0)
    const SurfaceGrid cosh_g = closed_form_preset("cosh", 3.0, nullptr, origin);
    CHECK(norm(cosh_g.at(1, 1) - Vec3{1, 0, 0}) < 1e-15);

    const double pi = 3.14159265358979323846;
    GridSpec window{0, 1, 0, pi / 6, 2, 2};
    const SurfaceGrid cos_g = closed_form_preset("cos", 3.0, nullptr, window);
    CHECK(norm(cos_g.at(1, 1) - Vec3{0.0, pi / 6, 1.0 / 3.0}) < 1e-15);

    const SurfaceGrid cubic = closed_form_preset("cubic", 0.0, nullptr, spec);
    CHECK(norm(cubic.at(1, 2) - Vec3{1 + 12, 2, 2 + 8}) < 1e-12);

    CHECK_THROWS_AS(closed_form_preset("torus", 1.0, nullptr, spec), ArgumentError);
    CHECK_THROWS_AS(closed_form_preset("cosh", 0.0, nullptr, spec), ArgumentError);
}

TEST_CASE("preset forcing quadratures agree with hand integration") {
    // f = 6 on the cosh preset: F'' = 6 cosh(av), G'' = 6 sinh(av)/a, so
    // F = 6 (cosh(av) - 1)/a^2 and G = 6 (sinh(av) - av)/a^3.
    const double a = 2.0;
    const Expr f6 = Expr::parse("6");
    GridSpec spec{0, 1, -1, 1, 2, 41};
    const SurfaceGrid g = closed_form_preset("cosh", a, &f6, spec, 1e-3);
    for (int iv = 0; iv < g.nv(); ++iv) {
        const double v = g.v[iv];
        const double F = 6 * (std::cosh(a * v) - 1) / (a * a);
        const double G = 6 * (std::sinh(a * v) - a * v) / (a * a * a);
        const Vec3 expected{std::cosh(a * v) + F, v, std::sinh(a * v) / a + G};
        CHECK(norm(g.at(1, iv) - expected) < 1e-7);
    }
}

TEST_CASE("improper-sphere graph function") {
    GridSpec spec{-1, 1, -1, 1, 5, 21};
    const SurfaceGrid saddle = generate_surface(make_input("0", "0", spec));
    for (double phi : improper_sphere_phi(saddle, 1e-12)) CHECK(std::abs(phi) < 1e-12);

    const SurfaceGrid cubic = generate_surface(make_input("0", "6", spec));
    const std::vector<double> phi = improper_sphere_phi(cubic, 1e-12);
    for (int iv = 0; iv < cubic.nv(); ++iv) {
        const double v = cubic.v[iv];
        CHECK(std::abs(phi[iv] + 2 * v * v * v) < 1e-9);
    }

    const SurfaceGrid ruled = generate_surface(make_input("9", "0", spec));
    CHECK_THROWS_AS(improper_sphere_phi(ruled, 1e-9), GeometryError);
}

TEST_CASE("divergence and domain errors surface with context") {
    GridSpec spec{0, 1, 0.0, 3.0, 2, 7};
    CHECK_THROWS_AS(generate_surface(make_input("exp(40*v)", "0", spec, 1e-2)),
                    DivergenceError);
    CHECK_THROWS_AS(generate_surface(make_input("log(v-1)", "0", spec, 1e-2)), DomainError);
    // ell depending on u is rejected up front.
    GeneratorInput bad = make_input("u", "0", spec);
    CHECK_THROWS_AS(generate_surface(bad), ArgumentError);
    GeneratorInput no_step = make_input("0", "0", spec, -1.0);
    CHECK_THROWS_AS(generate_surface(no_step), ArgumentError);
}

TEST_CASE("frames can be omitted") {
    GridSpec spec{0, 1, 0, 1, 3, 6};
    GeneratorInput in = make_input("v", "1", spec);
    in.with_frames = false;
    const SurfaceGrid g = generate_surface(in);
    CHECK(!g.has_frames());
    CHECK(g.meta.ell.value() == "v");
    CHECK(g.meta.f.value() == "1");
    CHECK(g.meta.rk_step.value() == 1e-3);
}
