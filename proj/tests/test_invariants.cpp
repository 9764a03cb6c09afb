#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "affsurf/invariants.hpp"

using namespace affsurf;

namespace {

struct Surface {
    Expr x, y, z;
    SurfaceJet jet(double u, double v) const {
        return {{x.eval(u, v), y.eval(u, v), z.eval(u, v)}};
    }
};

Surface parse_surface(const char* xs, const char* ys, const char* zs) {
    return {Expr::parse(xs), Expr::parse(ys), Expr::parse(zs)};
}

const Surface& saddle() {
    static const Surface s = parse_surface("u", "v", "u*v");
    return s;
}

const Surface& paraboloid() {
    static const Surface s = parse_surface("u", "v", "u^2+v^2");
    return s;
}

// One-sheeted hyperboloid x^2 + y^2 - z^2 = 1 parametrized by its two ruling
// families; coordinate curves are straight lines, so h11 = h22 = 0 while
// h12 = -1/(4 cos^4((u-v)/2)) < 0. A homogeneous non-flat, non-minimal
// benchmark: K_aff = 1, H_aff = -1 (with this ladder's orientation), l11 =
// l22 = 0, affine normal = -x.
const Surface& hyperboloid() {
    static const Surface s = parse_surface("cos(0.5*u+0.5*v)/cos(0.5*u-0.5*v)",
                                           "sin(0.5*u+0.5*v)/cos(0.5*u-0.5*v)",
                                           "-sin(0.5*u-0.5*v)/cos(0.5*u-0.5*v)");
    return s;
}

const Surface& cosh_ruled() { // generated family with ell = 9, f = 0
    static const Surface s = parse_surface("u*cosh(3*v)", "v", "u*sinh(3*v)/3");
    return s;
}

} // namespace

TEST_CASE("h-form determinant formula") {
    const HForm hs = h_form(saddle().jet(0.4, -1.1));
    CHECK(hs.h11 == 0.0);
    CHECK(hs.h12 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(hs.h22 == 0.0);

    const HForm hp = h_form(paraboloid().jet(0.3, 0.9));
    CHECK(hp.h11 == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(std::abs(hp.h12) < 1e-13);
    CHECK(hp.h22 == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(hp.det() == doctest::Approx(4.0).epsilon(1e-12));

    const Surface plane = parse_surface("u", "v", "0");
    const HForm hz = h_form(plane.jet(0.5, 0.5));
    CHECK(hz.h11 == 0.0);
    CHECK(hz.h12 == 0.0);
    CHECK(hz.h22 == 0.0);

    const HForm hh = h_form(hyperboloid().jet(0.3, -0.2));
    const double delta = 0.25;
    CHECK(hh.h12 == doctest::Approx(-1.0 / (4 * std::pow(std::cos(delta), 4))).epsilon(1e-12));
    CHECK(std::abs(hh.h11) < 1e-13);
    CHECK(std::abs(hh.h22) < 1e-13);
}

TEST_CASE("classification by the sign of det h") {
    CHECK(classify(h_form(saddle().jet(0, 0))) == SurfaceType::Hyperbolic);
    CHECK(classify(h_form(paraboloid().jet(0, 0))) == SurfaceType::Elliptic);
    CHECK(classify(HForm{0, 0, 0}) == SurfaceType::Degenerate);
    // Scale-aware threshold: a tiny determinant on a tiny h is degenerate.
    CHECK(classify(HForm{1e-7, 1e-7, -1e-7}) == SurfaceType::Degenerate);
}

TEST_CASE("metric coefficient") {
    CHECK(i_aff_coefficient(1.0) == 2.0);
    CHECK(i_aff_coefficient(16.0) == 8.0);
    CHECK_THROWS_AS(i_aff_coefficient(0.0), GeometryError);
}

TEST_CASE("1-adapted gauge normalizes h12") {
    const JMat3 g = one_adapted_gauge(Jet(16.0));
    CHECK(values(g)(0, 0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(values(g)(1, 1) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(values(g)(2, 2) == doctest::Approx(4.0).epsilon(1e-15));
    CHECK_THROWS_AS(one_adapted_gauge(Jet(-1.0)), GeometryError);
}

TEST_CASE("gauss curvature from h12 jets") {
    // Constant h12: flat.
    CHECK(gauss_curvature(Jet(1.0)) == 0.0);
    // Separable sqrt(h12) = F1(u) F2(v): flat.
    const Expr sep = Expr::parse("(1+u^2)^2*exp(2*v)");
    for (double u : {-0.8, 0.1, 1.3})
        for (double v : {-0.5, 0.4})
            CHECK(std::abs(gauss_curvature(sep.eval(u, v, 2))) < 1e-12);
    // h12 = exp(2uv): K = -exp(-uv).
    const Expr twist = Expr::parse("exp(2*u*v)");
    for (double u : {-0.7, 0.2, 0.9})
        for (double v : {-0.6, 0.5}) {
            const double expected = -std::exp(-u * v);
            CHECK(gauss_curvature(twist.eval(u, v, 2)) ==
                  doctest::Approx(expected).epsilon(1e-12));
        }
    CHECK_THROWS_AS(gauss_curvature(Expr::parse("exp(2*u*v)").eval(0.3, 0.3, 1)),
                    ArgumentError);
    CHECK_THROWS_AS(gauss_curvature(Jet(-2.0)), GeometryError);
}

TEST_CASE("gauss curvature: analytic jets vs finite differences on a grid") {
    // h12 = exp(2uv) sampled with step 1e-3; the grid path must match the
    // exact jets within 1e-5 including the one-sided boundary stencils.
    const Expr twist = Expr::parse("exp(2*u*v)");
    const int n = 21;
    const double step = 1e-3;
    const double u0 = 0.3, v0 = 0.4;
    const AxisStencils su(n, step), sv(n, step);
    std::vector<double> half_log(static_cast<std::size_t>(n) * n);
    for (int iv = 0; iv < n; ++iv)
        for (int iu = 0; iu < n; ++iu)
            half_log[static_cast<std::size_t>(iv) * n + iu] =
                std::log(std::sqrt(twist.value(u0 + iu * step, v0 + iv * step)));
    const GridField log_field(&su, &sv, half_log);
    const GridField log_uv = log_field.d_u(1).d_v(1);
    for (int iv = 0; iv < n; ++iv)
        for (int iu = 0; iu < n; ++iu) {
            const double u = u0 + iu * step, v = v0 + iv * step;
            const double k_grid = -log_uv.at(iu, iv) / std::sqrt(twist.value(u, v));
            const double k_exact = gauss_curvature(twist.eval(u, v, 2));
            CHECK(std::abs(k_grid - k_exact) < 1e-5);
        }
}

TEST_CASE("full ladder on the saddle") {
    const AnalyzeOptions opt = AnalyzeOptions::analytic_defaults();
    const LadderPoint lp = run_ladder(saddle().jet(0.0, 0.0), opt);
    CHECK(lp.type == SurfaceType::Hyperbolic);
    CHECK(!lp.hflip);
    CHECK(lp.k_aff == 0.0);
    CHECK(std::abs(lp.h_aff) < 1e-13);
    CHECK(std::abs(lp.l.l11) < 1e-13);
    CHECK(std::abs(lp.l.l22) < 1e-13);
    CHECK(norm(lp.affine_normal - Vec3{0, 0, 1}) < 1e-13);

    // Away from the origin the cross-product completion needs the shear; the
    // affine normal must still come out constant.
    const LadderPoint lq = run_ladder(saddle().jet(0.8, -0.6), opt);
    CHECK(norm(lq.affine_normal - Vec3{0, 0, 1}) < 1e-12);
    CHECK(std::abs(lq.h_aff) < 1e-12);
    CHECK(lq.k_aff == 0.0);
}

TEST_CASE("two-adapted shear is zero on an already 2-adapted frame and undoes a known shear") {
    const AnalyzeOptions opt = AnalyzeOptions::analytic_defaults();
    const LadderPoint lp = run_ladder(saddle().jet(0.5, 0.3), opt);
    // E2 is 2-adapted: re-solving gives zero.
    const JVec3 xu = lp.xu, xv = lp.xv;
    auto [z1, z2] = two_adapted_shear(lp.E2, xu, xv);
    CHECK(std::abs(z1.value()) < 1e-12);
    CHECK(std::abs(z2.value()) < 1e-12);
    // Shearing e3 by a e1 + b e2 is recovered with opposite sign.
    const double a = 0.3, b = -0.7;
    const JMat3 sheared = gauge_transform(lp.E2, shear_gauge(Jet(a), Jet(b)));
    auto [r1, r2] = two_adapted_shear(sheared, xu, xv);
    CHECK(r1.value() == doctest::Approx(-a).epsilon(1e-11));
    CHECK(r2.value() == doctest::Approx(-b).epsilon(1e-11));
}

TEST_CASE("l-form of the generated ruled surfaces") {
    const AnalyzeOptions opt = AnalyzeOptions::analytic_defaults();
    for (double u : {-0.9, 0.2, 1.1})
        for (double v : {-0.4, 0.0, 0.6}) {
            const LadderPoint lp = run_ladder(cosh_ruled().jet(u, v), opt);
            CHECK(lp.l.l22 == doctest::Approx(9.0).epsilon(1e-10));
            CHECK(std::abs(lp.l.l11) < 1e-10);
            CHECK(std::abs(lp.l.l12) < 1e-10);
            CHECK(lp.h_aff == mean_curvature(lp.l));
            CHECK(std::abs(lp.k_aff) < 1e-11);
        }
    // Negative constant ell.
    const Surface cos_ruled = parse_surface("u*cos(3*v)", "v", "u*sin(3*v)/3");
    const LadderPoint ln = run_ladder(cos_ruled.jet(0.4, 0.2), AnalyzeOptions::analytic_defaults());
    CHECK(ln.l.l22 == doctest::Approx(-9.0).epsilon(1e-10));
    CHECK(std::abs(ln.l.l11) < 1e-10);
    CHECK(std::abs(ln.l.l12) < 1e-10);
}

TEST_CASE("mean curvature is the l12 slot") {
    CHECK(mean_curvature(LForm{0, 0, 0, 0}) == 0.0);
    CHECK(mean_curvature(LForm{1.5, 3.0, -2.0, 0}) == 3.0);
}

TEST_CASE("hyperboloid: frozen invariants of a non-flat, non-minimal surface") {
    const AnalyzeOptions opt = AnalyzeOptions::analytic_defaults();
    for (double u : {-0.4, 0.0, 0.3})
        for (double v : {-0.2, 0.1, 0.5}) {
            const LadderPoint lp = run_ladder(hyperboloid().jet(u, v), opt);
            CHECK(lp.hflip);
            CHECK(lp.k_aff == doctest::Approx(1.0).epsilon(1e-10));
            CHECK(lp.h_aff == doctest::Approx(-1.0).epsilon(1e-10));
            CHECK(std::abs(lp.l.l11) < 1e-9);
            CHECK(std::abs(lp.l.l22) < 1e-9);
            // Affine normal of the central quadric points through the center.
            const SurfaceJet sj = hyperboloid().jet(u, v);
            const Vec3 x{sj.x.x.value(), sj.x.y.value(), sj.x.z.value()};
            CHECK(norm(lp.affine_normal + x) < 1e-10);
        }
}

TEST_CASE("residual gauge action on the l-form") {
    const AnalyzeOptions opt = AnalyzeOptions::analytic_defaults();
    const SurfaceJet sj = cosh_ruled().jet(0.7, 0.25);
    const LadderPoint lp = run_ladder(sj, opt);

    for (double lambda : {-1.0, -0.3, 0.3, 1.0}) {
        const Mat3 g = Mat3::diagonal(std::exp(lambda), std::exp(-lambda), 1.0);
        const JMat3 gauged = gauge_transform(lp.E2, constant_gauge(g));
        const LForm lt = l_form(gauged, lp.xu, lp.xv, 1e-6);
        CHECK(std::abs(lt.l11 - std::exp(2 * lambda) * lp.l.l11) < 1e-8);
        CHECK(std::abs(lt.l22 - std::exp(-2 * lambda) * lp.l.l22) < 1e-8);
        CHECK(std::abs(lt.l12 - lp.l.l12) < 1e-8);
    }

    // Relabeled frame carries the constant into l11 (nonzero scaling check).
    const JMat3 swapped = gauge_transform(lp.E2, constant_gauge(relabel_gauge()));
    const LForm ls = l_form(swapped, lp.xu, lp.xv, 1e-6);
    CHECK(ls.l11 == doctest::Approx(-9.0).epsilon(1e-9));
    CHECK(std::abs(ls.l22) < 1e-9);
    for (double lambda : {-1.0, 0.3}) {
        const Mat3 g = Mat3::diagonal(std::exp(lambda), std::exp(-lambda), 1.0);
        const LForm lg = l_form(gauge_transform(swapped, constant_gauge(g)), lp.xu, lp.xv, 1e-6);
        CHECK(std::abs(lg.l11 - std::exp(2 * lambda) * ls.l11) < 1e-8);
    }
}

TEST_CASE("mean curvature sign under the epsilon gauge") {
    // epsilon_1 epsilon_2 = 1 leaves H_aff unchanged; = -1 flips its sign.
    const AnalyzeOptions opt = AnalyzeOptions::analytic_defaults();
    const SurfaceJet sj = hyperboloid().jet(0.2, -0.3);
    const LadderPoint lp = run_ladder(sj, opt);
    REQUIRE(std::abs(lp.h_aff + 1.0) < 1e-9);

    const Mat3 both = Mat3::diagonal(-1.0, -1.0, 1.0); // eps1 = eps2 = -1
    const LForm same = l_form(gauge_transform(lp.E2, constant_gauge(both)), lp.xu, lp.xv, 1e-6);
    CHECK(same.l12 == doctest::Approx(lp.h_aff).epsilon(1e-10));

    const Mat3 one = Mat3::diagonal(1.0, -1.0, -1.0); // eps1 eps2 = -1
    const LForm flip = l_form(gauge_transform(lp.E2, constant_gauge(one)), lp.xu, lp.xv, 1e-6);
    CHECK(flip.l12 == doctest::Approx(-lp.h_aff).epsilon(1e-10));
}

TEST_CASE("GL(2) action preserves the classification and transforms h as stated") {
    std::mt19937 rng(1337u);
    std::uniform_real_distribution<double> d(-2.0, 2.0);
    int done = 0;
    while (done < 20) {
        double b11 = d(rng), b12 = d(rng), b21 = d(rng), b22 = d(rng);
        const double detB = b11 * b22 - b12 * b21;
        if (std::abs(detB) < 0.15) continue;
        Mat3 g;
        g(0, 0) = b11; g(0, 1) = b12; g(0, 2) = d(rng);
        g(1, 0) = b21; g(1, 1) = b22; g(1, 2) = d(rng);
        g(2, 2) = 1.0 / detB;

        for (const Surface* surf : {&saddle(), &paraboloid()}) {
            const SurfaceJet sj = surf->jet(0.35, -0.15);
            const JVec3 xu{sj.x.x.du(), sj.x.y.du(), sj.x.z.du()};
            const JVec3 xv{sj.x.x.dv(), sj.x.y.dv(), sj.x.z.dv()};
            const JMat3 E0 = tangent_frame_jets(sj);
            const HForm h0 = h_form(sj);

            double h21 = 0.0;
            const HForm hg = h_from_frame(gauge_transform(E0, constant_gauge(g)), xu, xv, &h21);
            CHECK(std::abs(hg.h12 - h21) < 1e-9);

            // h~ = det(B) B^T h B
            const double s = detB;
            const double t11 = s * (b11 * (h0.h11 * b11 + h0.h12 * b21) +
                                    b21 * (h0.h12 * b11 + h0.h22 * b21));
            const double t12 = s * (b11 * (h0.h11 * b12 + h0.h12 * b22) +
                                    b21 * (h0.h12 * b12 + h0.h22 * b22));
            const double t22 = s * (b12 * (h0.h11 * b12 + h0.h12 * b22) +
                                    b22 * (h0.h12 * b12 + h0.h22 * b22));
            CHECK(hg.h11 == doctest::Approx(t11).epsilon(1e-8));
            CHECK(hg.h12 == doctest::Approx(t12).epsilon(1e-8));
            CHECK(hg.h22 == doctest::Approx(t22).epsilon(1e-8));
            CHECK((hg.det() > 0) == (h0.det() > 0));
        }
        ++done;
    }
}

TEST_CASE("orientation fix for h12 < 0") {
    const Surface flipped = parse_surface("u", "v", "-(u*v)");
    const AnalyzeOptions opt = AnalyzeOptions::analytic_defaults();
    const LadderPoint lp = run_ladder(flipped.jet(0.3, 0.4), opt);
    CHECK(lp.hflip);
    CHECK(lp.k_aff == 0.0);
    CHECK(std::abs(lp.h_aff) < 1e-12);
    CHECK(std::abs(det(values(lp.E2)) - 1.0) < 1e-12);
}

TEST_CASE("1-adapted relations and 2-adapted residual hold along the ladder") {
    const Surface scaled = parse_surface("u", "v", "2*u*v"); // h12 = 2
    for (const Surface* surf : {&scaled, &hyperboloid()}) {
        const SurfaceJet sj = surf->jet(0.25, -0.35);
        const AnalyzeOptions opt = AnalyzeOptions::analytic_defaults();
        const LadderPoint lp = run_ladder(sj, opt);
        // omega^3_1 = omega^2 and omega^3_2 = omega^1 for the 1-adapted frame.
        const MCCoefficients mc1 = mc_coefficients(lp.E1);
        const Mat3 invE1 = inverse(values(lp.E1));
        const Vec3 wu = invE1 * values(lp.xu);
        const Vec3 wv = invE1 * values(lp.xv);
        CHECK(std::abs(mc1.Au(2, 0) - wu.y) < 1e-9);
        CHECK(std::abs(mc1.Av(2, 0) - wv.y) < 1e-9);
        CHECK(std::abs(mc1.Au(2, 1) - wu.x) < 1e-9);
        CHECK(std::abs(mc1.Av(2, 1) - wv.x) < 1e-9);
        // omega^3_3 = 0 for the 2-adapted frame.
        const MCCoefficients mc2 = mc_coefficients(lp.E2);
        CHECK(std::abs(mc2.Au(2, 2)) < 1e-9);
        CHECK(std::abs(mc2.Av(2, 2)) < 1e-9);
        // Unimodular throughout.
        CHECK(std::abs(det(values(lp.E0)) - 1.0) < 1e-9);
        CHECK(std::abs(det(values(lp.E1)) - 1.0) < 1e-9);
        CHECK(std::abs(det(values(lp.E2)) - 1.0) < 1e-9);
    }
}

TEST_CASE("analyze: saddle surface, analytic mode") {
    GridSpec spec{-1, 1, -1, 1, 11, 11};
    const AnalysisResult res = analyze_surface(saddle().x, saddle().y, saddle().z, spec);
    CHECK(res.summary.n_points == 121);
    CHECK(res.summary.n_hyperbolic == 121);
    CHECK(res.summary.asymptotic);
    CHECK(res.summary.affine_ran);
    CHECK(res.summary.max_abs_k <= 1e-12);
    CHECK(res.summary.max_abs_h <= 1e-12);
    for (const PointInvariants& p : res.points) {
        CHECK(std::abs(p.h.h11) <= 1e-12);
        CHECK(std::abs(p.h.h12 - 1.0) <= 1e-12);
        CHECK(std::abs(p.h.h22) <= 1e-12);
        REQUIRE(p.affine_normal.has_value());
        CHECK(norm(*p.affine_normal - Vec3{0, 0, 1}) < 1e-11);
    }
    const AsymptoticCheck ac = check_asymptotic(res);
    CHECK(ac.asymptotic);
    CHECK(ac.max_abs_h11 <= 1e-12);
}

TEST_CASE("analyze: improper-sphere example with f = 6") {
    GridSpec spec{-1, 1, -1, 1, 9, 9};
    const Surface cubic = parse_surface("u+3*v^2", "v", "u*v+v^3");
    const AnalysisResult res = analyze_surface(cubic.x, cubic.y, cubic.z, spec);
    CHECK(res.summary.asymptotic);
    CHECK(res.summary.max_abs_k <= 1e-11);
    CHECK(res.summary.max_abs_h <= 1e-11);
    // Affine normal constant across the patch: improper affine sphere.
    const Vec3 ref = *res.points.front().affine_normal;
    for (const PointInvariants& p : res.points)
        CHECK(norm(*p.affine_normal - ref) < 1e-10);
}

TEST_CASE("analyze: elliptic and degenerate inputs skip the affine steps") {
    GridSpec spec{-1, 1, -1, 1, 7, 7};
    const AnalysisResult par =
        analyze_surface(paraboloid().x, paraboloid().y, paraboloid().z, spec);
    CHECK(par.summary.n_elliptic == 49);
    CHECK(!par.summary.asymptotic);
    CHECK(!par.summary.affine_ran);
    CHECK(par.summary.skip_reason.find("not hyperbolic") != std::string::npos);
    for (const PointInvariants& p : par.points) CHECK(!p.k_aff.has_value());

    const Surface plane = parse_surface("u", "v", "0");
    const AnalysisResult pl = analyze_surface(plane.x, plane.y, plane.z, spec);
    CHECK(pl.summary.n_degenerate == 49);
    CHECK(!pl.summary.affine_ran);

    // Hyperbolic but not in asymptotic coordinates.
    const Surface skew = parse_surface("u", "v", "u*v+u^3");
    const AnalysisResult sk = analyze_surface(skew.x, skew.y, skew.z, spec);
    CHECK(sk.summary.n_hyperbolic == 49);
    CHECK(!sk.summary.asymptotic);
    CHECK(sk.summary.skip_reason.find("asymptotic") != std::string::npos);
}

TEST_CASE("analyze: hyperboloid end to end") {
    GridSpec spec{-0.5, 0.5, -0.5, 0.5, 9, 9};
    const Surface& h = hyperboloid();
    const AnalysisResult res = analyze_surface(h.x, h.y, h.z, spec);
    CHECK(res.summary.asymptotic);
    CHECK(res.summary.affine_ran);
    for (const PointInvariants& p : res.points) {
        CHECK(*p.k_aff == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(*p.h_aff == doctest::Approx(-1.0).epsilon(1e-9));
    }
}
