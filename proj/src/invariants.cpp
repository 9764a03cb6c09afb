#include "affsurf/invariants.hpp"

#include <algorithm>
#include <cmath>

namespace affsurf {

double HForm::scale() const {
    return std::max({std::abs(h11), std::abs(h12), std::abs(h22), 1.0});
}

const char* to_string(SurfaceType t) {
    switch (t) {
        case SurfaceType::Elliptic: return "elliptic";
        case SurfaceType::Hyperbolic: return "hyperbolic";
        case SurfaceType::Degenerate: return "degenerate";
    }
    return "?";
}

HJets h_form_jets(const SurfaceJet& sj) {
    const JVec3 xu{sj.x.x.du(), sj.x.y.du(), sj.x.z.du()};
    const JVec3 xv{sj.x.x.dv(), sj.x.y.dv(), sj.x.z.dv()};
    if (norm(cross(values(xu), values(xv))) < 1e-12)
        throw GeometryError("degenerate tangent plane: |xu x xv| < 1e-12");
    const JVec3 xuu{xu.x.du(), xu.y.du(), xu.z.du()};
    const JVec3 xuv{xu.x.dv(), xu.y.dv(), xu.z.dv()};
    const JVec3 xvv{xv.x.dv(), xv.y.dv(), xv.z.dv()};
    return {det3(xu, xv, xuu), det3(xu, xv, xuv), det3(xu, xv, xvv)};
}

HForm h_form(const SurfaceJet& sj) {
    const HJets hj = h_form_jets(sj);
    return {hj.h11.value(), hj.h12.value(), hj.h22.value()};
}

SurfaceType classify(const HForm& h, double degenerate_tol) {
    const double s = h.scale();
    const double d = h.det();
    if (std::abs(d) <= degenerate_tol * s * s) return SurfaceType::Degenerate;
    return d > 0.0 ? SurfaceType::Elliptic : SurfaceType::Hyperbolic;
}

double i_aff_coefficient(double h12) {
    if (!(h12 > 0.0)) throw GeometryError("metric coefficient requires h12 > 0");
    return 2.0 * std::sqrt(h12);
}

double gauss_curvature(const Jet& h12) {
    if (h12.order() < 2) throw ArgumentError("gauss_curvature needs an order-2 jet of h12");
    if (!(h12.value() > 0.0)) throw GeometryError("gauss_curvature requires h12 > 0");
    const Jet half_log = log(sqrt(h12));
    return -half_log.partial(1, 1) / std::sqrt(h12.value());
}

double mean_curvature(const LForm& l) { return l.l12; }

JMat3 one_adapted_gauge(const Jet& h12) {
    if (!(h12.value() > 0.0))
        throw GeometryError("1-adapted gauge requires h12 > 0 (after orientation fix)");
    const Jet quarter = pow_real(h12, -0.25);
    return JMat3::diagonal(quarter, quarter, pow_real(h12, 0.5));
}

namespace {

// Solve p * w_u + q * w_v = a for (p, q) against the coframe values
// wu = (omega^1(du), omega^2(du)), wv = (omega^1(dv), omega^2(dv)):
//   p * wu[0] + q * wu[1] = a_u
//   p * wv[0] + q * wv[1] = a_v
template <class T>
std::pair<T, T> solve_coframe(const T& a_u, const T& a_v,
                              const T& wu0, const T& wu1,
                              const T& wv0, const T& wv1) {
    const T den = wu0 * wv1 - wu1 * wv0;
    const T p = (a_u * wv1 - a_v * wu1) / den;
    const T q = (a_v * wu0 - a_u * wv0) / den;
    return {p, q};
}

JVec3 mat_vec(const JMat3& m, const JVec3& v) { return m * v; }

} // namespace

std::pair<Jet, Jet> two_adapted_shear(const JMat3& E1, const JVec3& xu, const JVec3& xv) {
    const JMat3 inv_E1 = inverse(E1);
    const JMat3 A1u = inv_E1 * dmat_u(E1);
    const JMat3 A1v = inv_E1 * dmat_v(E1);
    const JVec3 wu = mat_vec(inv_E1, xu);
    const JVec3 wv = mat_vec(inv_E1, xv);
    // omega^3_3 + r2 omega^1 + r1 omega^2 = 0 in both du and dv components.
    auto [r2, r1] = solve_coframe<Jet>(-A1u(2, 2), -A1v(2, 2), wu.x, wu.y, wv.x, wv.y);
    return {r1, r2};
}

JMat3 shear_gauge(const Jet& r1, const Jet& r2) {
    JMat3 g = JMat3::identity();
    g(0, 2) = r1;
    g(1, 2) = r2;
    return g;
}

HForm h_from_frame(const JMat3& E, const JVec3& xu, const JVec3& xv, double* h21_out) {
    const MCCoefficients mc = mc_coefficients(E);
    const Mat3 inv_val = inverse(values(E));
    const Vec3 wu = inv_val * values(xu);
    const Vec3 wv = inv_val * values(xv);
    auto [h11, h12] = solve_coframe<double>(mc.Au(2, 0), mc.Av(2, 0), wu.x, wu.y, wv.x, wv.y);
    auto [h21, h22] = solve_coframe<double>(mc.Au(2, 1), mc.Av(2, 1), wu.x, wu.y, wv.x, wv.y);
    if (h21_out) *h21_out = h21;
    return {h11, 0.5 * (h12 + h21), h22};
}

LForm l_form(const JMat3& E2, const JVec3& xu, const JVec3& xv, double mismatch_tol) {
    const MCCoefficients mc = mc_coefficients(E2);
    const Mat3 inv_val = inverse(values(E2));
    const Vec3 wu = inv_val * values(xu);
    const Vec3 wv = inv_val * values(xv);
    // omega^1_3 = l12 omega^1 + l22 omega^2 ; omega^2_3 = l11 omega^1 + l12 omega^2
    auto [l12_a, l22] = solve_coframe<double>(mc.Au(0, 2), mc.Av(0, 2), wu.x, wu.y, wv.x, wv.y);
    auto [l11, l12_b] = solve_coframe<double>(mc.Au(1, 2), mc.Av(1, 2), wu.x, wu.y, wv.x, wv.y);
    LForm l;
    l.l11 = l11;
    l.l22 = l22;
    l.l12 = 0.5 * (l12_a + l12_b);
    l.mismatch = std::abs(l12_a - l12_b);
    const double scale = std::max({std::abs(l11), std::abs(l12_a), std::abs(l12_b),
                                   std::abs(l22), 1.0});
    if (l.mismatch > mismatch_tol * scale)
        throw GeometryError("inconsistent l12 reads (frame not 2-adapted): gap = " +
                            std::to_string(l.mismatch));
    return l;
}

LadderPoint run_ladder(const SurfaceJet& sj, const AnalyzeOptions& opt) {
    LadderPoint lp;
    lp.xu = JVec3{sj.x.x.du(), sj.x.y.du(), sj.x.z.du()};
    lp.xv = JVec3{sj.x.x.dv(), sj.x.y.dv(), sj.x.z.dv()};
    lp.hj = h_form_jets(sj);
    lp.h = {lp.hj.h11.value(), lp.hj.h12.value(), lp.hj.h22.value()};
    lp.type = classify(lp.h, opt.degenerate_tol);
    if (lp.type != SurfaceType::Hyperbolic)
        throw GeometryError("adapted-frame ladder requires a hyperbolic point");
    const double asym_scale = std::max(1.0, std::abs(lp.h.h12));
    if (std::max(std::abs(lp.h.h11), std::abs(lp.h.h22)) > opt.asym_tol * asym_scale)
        throw GeometryError("adapted-frame ladder requires asymptotic coordinates");

    lp.E0 = tangent_frame_jets(sj);
    Jet h12 = lp.hj.h12;
    if (h12.value() < 0.0) {
        lp.hflip = true;
        lp.E0 = lp.E0 * constant_gauge(relabel_gauge());
        h12 = -h12;
    }
    lp.k_aff = gauss_curvature(h12);
    lp.E1 = lp.E0 * one_adapted_gauge(h12);
    auto [r1, r2] = two_adapted_shear(lp.E1, lp.xu, lp.xv);
    lp.r1 = r1;
    lp.r2 = r2;
    lp.E2 = lp.E1 * shear_gauge(r1, r2);
    lp.l = l_form(lp.E2, lp.xu, lp.xv, opt.l_mismatch_tol);
    lp.h_aff = mean_curvature(lp.l);
    lp.affine_normal = values(lp.E2.col(2));
    return lp;
}

namespace {

struct Classified {
    std::vector<HForm> h;
    std::vector<SurfaceType> type;
    AnalysisSummary summary;
};

Classified classify_grid(const std::vector<HForm>& hforms, const AnalyzeOptions& opt) {
    Classified c;
    c.h = hforms;
    c.type.reserve(hforms.size());
    auto& s = c.summary;
    s.n_points = static_cast<int>(hforms.size());
    for (const HForm& h : hforms) {
        const SurfaceType t = classify(h, opt.degenerate_tol);
        c.type.push_back(t);
        switch (t) {
            case SurfaceType::Elliptic: ++s.n_elliptic; break;
            case SurfaceType::Hyperbolic: ++s.n_hyperbolic; break;
            case SurfaceType::Degenerate: ++s.n_degenerate; break;
        }
        s.max_abs_h11 = std::max(s.max_abs_h11, std::abs(h.h11));
        s.max_abs_h22 = std::max(s.max_abs_h22, std::abs(h.h22));
        s.max_abs_h12 = std::max(s.max_abs_h12, std::abs(h.h12));
    }
    const bool all_hyperbolic = s.n_hyperbolic == s.n_points;
    const double asym_scale = std::max(1.0, s.max_abs_h12);
    const bool flat_offdiag =
        std::max(s.max_abs_h11, s.max_abs_h22) <= opt.asym_tol * asym_scale;
    s.asymptotic = all_hyperbolic && flat_offdiag;
    if (!all_hyperbolic)
        s.skip_reason = "surface is not hyperbolic everywhere (elliptic: " +
                        std::to_string(s.n_elliptic) +
                        ", degenerate: " + std::to_string(s.n_degenerate) + ")";
    else if (!flat_offdiag)
        s.skip_reason = "coordinates are not asymptotic (max|h11| = " +
                        std::to_string(s.max_abs_h11) +
                        ", max|h22| = " + std::to_string(s.max_abs_h22) + ")";
    return c;
}

} // namespace

AnalysisResult analyze_surface(const Expr& x, const Expr& y, const Expr& z,
                               const GridSpec& spec, const AnalyzeOptions& opt) {
    spec.validate();
    AnalysisResult res;
    res.analytic_mode = true;
    res.u = spec.u_values();
    res.v = spec.v_values();

    std::vector<SurfaceJet> jets;
    jets.reserve(res.u.size() * res.v.size());
    std::vector<HForm> hforms;
    hforms.reserve(jets.capacity());
    for (double vv : res.v)
        for (double uu : res.u) {
            SurfaceJet sj{{x.eval(uu, vv), y.eval(uu, vv), z.eval(uu, vv)}};
            hforms.push_back(h_form(sj));
            jets.push_back(std::move(sj));
        }

    Classified c = classify_grid(hforms, opt);
    res.summary = c.summary;

    const int nu = static_cast<int>(res.u.size());
    res.points.resize(jets.size());
    for (std::size_t i = 0; i < jets.size(); ++i) {
        PointInvariants& p = res.points[i];
        p.u = res.u[i % nu];
        p.v = res.v[i / nu];
        p.h = c.h[i];
        p.type = c.type[i];
    }

    if (opt.affine_steps && res.summary.asymptotic) {
        for (std::size_t i = 0; i < jets.size(); ++i) {
            const LadderPoint lp = run_ladder(jets[i], opt);
            PointInvariants& p = res.points[i];
            p.k_aff = lp.k_aff;
            p.h_aff = lp.h_aff;
            p.l = lp.l;
            p.affine_normal = lp.affine_normal;
            res.summary.max_abs_k = std::max(res.summary.max_abs_k, std::abs(lp.k_aff));
            res.summary.max_abs_h = std::max(res.summary.max_abs_h, std::abs(lp.h_aff));
        }
        res.summary.affine_ran = true;
    }
    return res;
}

namespace {

// Least-squares fit of a scalar field by a bivariate polynomial of total
// degree <= 3 over normalized coordinates; linear in the data, so it commutes
// with affine maps applied to vector fields componentwise.
class PolyFit2D {
public:
    static constexpr int kTerms = 10;

    PolyFit2D(const std::vector<double>& u, const std::vector<double>& v)
        : u0_(0.5 * (u.front() + u.back())), su_(2.0 / (u.back() - u.front())),
          v0_(0.5 * (v.front() + v.back())), sv_(2.0 / (v.back() - v.front())), u_(&u), v_(&v) {}

    std::array<double, kTerms> fit(const std::vector<double>& samples) const {
        std::array<std::array<double, kTerms + 1>, kTerms> m{};
        const int nu = static_cast<int>(u_->size());
        for (std::size_t i = 0; i < samples.size(); ++i) {
            const auto t = terms((*u_)[i % nu], (*v_)[i / nu]);
            for (int r = 0; r < kTerms; ++r) {
                for (int c = 0; c < kTerms; ++c) m[r][c] += t[r] * t[c];
                m[r][kTerms] += t[r] * samples[i];
            }
        }
        // Gaussian elimination with partial pivoting on the normal equations.
        for (int col = 0; col < kTerms; ++col) {
            int pivot = col;
            for (int r = col + 1; r < kTerms; ++r)
                if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
            std::swap(m[col], m[pivot]);
            if (std::abs(m[col][col]) < 1e-14) throw GeometryError("degenerate normal fit");
            for (int r = 0; r < kTerms; ++r) {
                if (r == col) continue;
                const double f = m[r][col] / m[col][col];
                for (int c = col; c <= kTerms; ++c) m[r][c] -= f * m[col][c];
            }
        }
        std::array<double, kTerms> coeff{};
        for (int r = 0; r < kTerms; ++r) coeff[r] = m[r][kTerms] / m[r][r];
        return coeff;
    }

    double eval(const std::array<double, kTerms>& coeff, double u, double v) const {
        const auto t = terms(u, v);
        double s = 0.0;
        for (int r = 0; r < kTerms; ++r) s += coeff[r] * t[r];
        return s;
    }

private:
    std::array<double, kTerms> terms(double u, double v) const {
        const double s = (u - u0_) * su_;
        const double t = (v - v0_) * sv_;
        return {1.0, s, t, s * s, s * t, t * t, s * s * s, s * s * t, s * t * t, t * t * t};
    }

    double u0_, su_, v0_, sv_;
    const std::vector<double>* u_;
    const std::vector<double>* v_;
};

// Matrix-valued field over the grid with finite-difference derivatives.
class Mat3Field {
public:
    Mat3Field(const AxisStencils* su, const AxisStencils* sv)
        : su_(su), sv_(sv), entries_(9, GridField(su, sv, zeros(su, sv))) {}

    static std::vector<double> zeros(const AxisStencils* su, const AxisStencils* sv) {
        return std::vector<double>(static_cast<std::size_t>(su->n()) * sv->n(), 0.0);
    }

    static Mat3Field from_points(const AxisStencils* su, const AxisStencils* sv,
                                 const std::vector<Mat3>& mats) {
        Mat3Field f(su, sv);
        for (int e = 0; e < 9; ++e) {
            std::vector<double> s(mats.size());
            for (std::size_t i = 0; i < mats.size(); ++i) s[i] = mats[i](e / 3, e % 3);
            f.entries_[e] = GridField(su, sv, std::move(s));
        }
        return f;
    }

    Mat3 at(int iu, int iv) const {
        Mat3 m;
        for (int e = 0; e < 9; ++e) m(e / 3, e % 3) = entries_[e].at(iu, iv);
        return m;
    }

    Mat3Field d_u() const {
        Mat3Field f(su_, sv_);
        for (int e = 0; e < 9; ++e) f.entries_[e] = entries_[e].d_u(1);
        return f;
    }
    Mat3Field d_v() const {
        Mat3Field f(su_, sv_);
        for (int e = 0; e < 9; ++e) f.entries_[e] = entries_[e].d_v(1);
        return f;
    }

private:
    const AxisStencils* su_;
    const AxisStencils* sv_;
    std::vector<GridField> entries_;
};

} // namespace

AnalysisResult analyze_grid(const SurfaceGrid& grid, const AnalyzeOptions& opt) {
    grid.validate();
    const int nu = grid.nu(), nv = grid.nv();
    const double hu = SurfaceGrid::uniform_step(grid.u, "u");
    const double hv = SurfaceGrid::uniform_step(grid.v, "v");
    // Wide first-derivative windows: the completion vector n/|n|^2 is rational
    // in the parameters, and 5-point stencils lose too much near the boundary.
    const AxisStencils su(nu, hu, 7), sv(nv, hv, 7);

    AnalysisResult res;
    res.analytic_mode = false;
    res.u = grid.u;
    res.v = grid.v;
    const std::size_t n = grid.points.size();

    auto component_field = [&](int comp) {
        std::vector<double> s(n);
        for (std::size_t i = 0; i < n; ++i) s[i] = grid.points[i][comp];
        return GridField(&su, &sv, std::move(s));
    };

    // First and second derivative fields of the position samples.
    std::vector<Vec3> xu(n), xv(n), xuu(n), xuv(n), xvv(n);
    for (int comp = 0; comp < 3; ++comp) {
        const GridField f = component_field(comp);
        const GridField fu = f.d_u(1), fv = f.d_v(1);
        const GridField fuu = f.d_u(2), fvv = f.d_v(2), fuv = fu.d_v(1);
        for (std::size_t i = 0; i < n; ++i) {
            xu[i][comp] = fu.samples()[i];
            xv[i][comp] = fv.samples()[i];
            xuu[i][comp] = fuu.samples()[i];
            xuv[i][comp] = fuv.samples()[i];
            xvv[i][comp] = fvv.samples()[i];
        }
    }

    std::vector<HForm> hforms(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (norm(cross(xu[i], xv[i])) < 1e-12)
            throw GeometryError("degenerate tangent plane in grid");
        hforms[i] = {det3(xu[i], xv[i], xuu[i]), det3(xu[i], xv[i], xuv[i]),
                     det3(xu[i], xv[i], xvv[i])};
    }

    Classified c = classify_grid(hforms, opt);
    res.summary = c.summary;
    res.points.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        PointInvariants& p = res.points[i];
        p.u = grid.u[i % nu];
        p.v = grid.v[i / nu];
        p.h = c.h[i];
        p.type = c.type[i];
    }

    if (!(opt.affine_steps && res.summary.asymptotic)) return res;

    const bool hflip = hforms[0].h12 < 0.0;
    const Mat3 relabel = relabel_gauge();

    // Oriented h12 field and the flat-metric curvature from log sqrt(h12).
    std::vector<double> h12t(n);
    for (std::size_t i = 0; i < n; ++i) {
        h12t[i] = hflip ? -hforms[i].h12 : hforms[i].h12;
        if (!(h12t[i] > 0.0)) throw GeometryError("h12 changes sign across the grid");
    }
    std::vector<double> half_log(n);
    for (std::size_t i = 0; i < n; ++i) half_log[i] = std::log(std::sqrt(h12t[i]));
    // Flat-metric curvature from 4th-order central stencils on log sqrt(h12).
    const AxisStencils su4(nu, hu, 5), sv4(nv, hv, 5);
    const GridField log_field(&su4, &sv4, half_log);
    const GridField log_uv = log_field.d_u(1).d_v(1);

    struct AffineOut {
        std::vector<LForm> l;
        std::vector<Vec3> normal;
    };

    // Adapted-frame pass. The 2-adapted frame does not depend on how e3 is
    // completed, so `direction`, when given, replaces the cross-product
    // completion by e3 = d / (n . d) for better finite-difference behavior.
    auto affine_pass = [&](const std::vector<Vec3>* direction) {
        AffineOut out;
        out.l.resize(n);
        out.normal.resize(n);
        std::vector<Mat3> E1(n);
        for (std::size_t i = 0; i < n; ++i) {
            const Vec3 nvec = cross(xu[i], xv[i]);
            const Vec3 d = direction ? (*direction)[i] : nvec;
            const Vec3 e3 = d / dot(nvec, d);
            Mat3 E0 = Mat3::from_cols(xu[i], xv[i], e3);
            if (hflip) E0 = E0 * relabel;
            const double q = std::pow(h12t[i], -0.25);
            E1[i] = E0 * Mat3::diagonal(q, q, std::sqrt(h12t[i]));
        }
        const Mat3Field E1f = Mat3Field::from_points(&su, &sv, E1);
        const Mat3Field E1fu = E1f.d_u(), E1fv = E1f.d_v();

        // Shear to the 2-adapted frame.
        std::vector<Mat3> E2(n);
        for (int iv = 0; iv < nv; ++iv)
            for (int iu = 0; iu < nu; ++iu) {
                const std::size_t i = static_cast<std::size_t>(iv) * nu + iu;
                const Mat3 inv_E1 = inverse(E1[i]);
                const Mat3 A1u = inv_E1 * E1fu.at(iu, iv);
                const Mat3 A1v = inv_E1 * E1fv.at(iu, iv);
                const Vec3 wu = inv_E1 * xu[i];
                const Vec3 wv = inv_E1 * xv[i];
                auto [r2, r1] = solve_coframe<double>(-A1u(2, 2), -A1v(2, 2),
                                                      wu.x, wu.y, wv.x, wv.y);
                Mat3 U = Mat3::identity();
                U(0, 2) = r1;
                U(1, 2) = r2;
                E2[i] = E1[i] * U;
            }
        const Mat3Field E2f = Mat3Field::from_points(&su, &sv, E2);
        const Mat3Field E2fu = E2f.d_u(), E2fv = E2f.d_v();

        for (int iv = 0; iv < nv; ++iv)
            for (int iu = 0; iu < nu; ++iu) {
                const std::size_t i = static_cast<std::size_t>(iv) * nu + iu;
                const Mat3 inv_E2 = inverse(E2[i]);
                const Mat3 A2u = inv_E2 * E2fu.at(iu, iv);
                const Mat3 A2v = inv_E2 * E2fv.at(iu, iv);
                const Vec3 wu = inv_E2 * xu[i];
                const Vec3 wv = inv_E2 * xv[i];
                auto [l12_a, l22] = solve_coframe<double>(A2u(0, 2), A2v(0, 2),
                                                          wu.x, wu.y, wv.x, wv.y);
                auto [l11, l12_b] = solve_coframe<double>(A2u(1, 2), A2v(1, 2),
                                                          wu.x, wu.y, wv.x, wv.y);
                LForm& l = out.l[i];
                l.l11 = l11;
                l.l22 = l22;
                l.l12 = 0.5 * (l12_a + l12_b);
                l.mismatch = std::abs(l12_a - l12_b);
                out.normal[i] = E2[i].col(2);
            }
        return out;
    };

    AffineOut result = affine_pass(nullptr);

    // Refinement: the cross-product completion is rational in (u,v), which
    // costs finite-difference accuracy near the boundary. Refit a low-degree
    // polynomial to the computed affine normals and rerun with it; the fit is
    // linear in the data, so the refined pass commutes exactly with equiaffine
    // maps of the grid. Two rounds: the second starts from nearly exact
    // normals, which removes the completion bias from the first.
    for (int round = 0; round < 2; ++round) {
        try {
            const PolyFit2D fitter(grid.u, grid.v);
            std::array<std::array<double, PolyFit2D::kTerms>, 3> coeff;
            for (int comp = 0; comp < 3; ++comp) {
                std::vector<double> samples(n);
                for (std::size_t i = 0; i < n; ++i) samples[i] = result.normal[i][comp];
                coeff[comp] = fitter.fit(samples);
            }
            std::vector<Vec3> fitted(n);
            double worst_align = 1.0;
            for (int iv = 0; iv < nv && worst_align > 1e-3; ++iv)
                for (int iu = 0; iu < nu; ++iu) {
                    const std::size_t i = static_cast<std::size_t>(iv) * nu + iu;
                    Vec3 p;
                    for (int comp = 0; comp < 3; ++comp)
                        p[comp] = fitter.eval(coeff[comp], grid.u[iu], grid.v[iv]);
                    fitted[i] = p;
                    const Vec3 nvec = cross(xu[i], xv[i]);
                    const double align =
                        std::abs(dot(nvec, p)) / (norm(nvec) * norm(p) + 1e-300);
                    worst_align = std::min(worst_align, align);
                }
            // Only a near-tangent fit (degenerate completion) aborts.
            if (worst_align <= 1e-3) break;
            result = affine_pass(&fitted);
        } catch (const Error&) {
            break; // fit failed; keep the current pass
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        const LForm& l = result.l[i];
        const double scale = std::max({std::abs(l.l11), std::abs(l.l22), std::abs(l.l12), 1.0});
        if (l.mismatch > opt.l_mismatch_tol * scale)
            throw GeometryError("inconsistent l12 reads in grid analysis (gap " +
                                std::to_string(l.mismatch) + ")");
        PointInvariants& p = res.points[i];
        p.k_aff = -log_uv.samples()[i] / std::sqrt(h12t[i]);
        p.l = l;
        p.h_aff = l.l12;
        p.affine_normal = result.normal[i];
        res.summary.max_abs_k = std::max(res.summary.max_abs_k, std::abs(*p.k_aff));
        res.summary.max_abs_h = std::max(res.summary.max_abs_h, std::abs(*p.h_aff));
    }
    res.summary.affine_ran = true;
    return res;
}

AsymptoticCheck check_asymptotic(const AnalysisResult& result) {
    return {result.summary.asymptotic, result.summary.max_abs_h11, result.summary.max_abs_h22};
}

} // namespace affsurf
