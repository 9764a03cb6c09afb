#include "affsurf/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "affsurf/errors.hpp"
#include "affsurf/generator.hpp"

namespace affsurf {

bool VerificationReport::passed() const {
    for (const CheckResult& c : checks)
        if (c.counted && !c.passed) return false;
    return true;
}

const CheckResult* VerificationReport::find(const std::string& name) const {
    for (const CheckResult& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

namespace {

std::vector<CheckResult> flat_minimal_checks(const AnalysisResult& res, double tol) {
    std::vector<CheckResult> out;
    const AnalysisSummary& s = res.summary;

    CheckResult hyp;
    hyp.name = "hyperbolic";
    hyp.tol = 0.0;
    hyp.max_residual = static_cast<double>(s.n_points - s.n_hyperbolic);
    hyp.passed = s.n_hyperbolic == s.n_points;
    for (const PointInvariants& p : res.points)
        if (p.type != SurfaceType::Hyperbolic) {
            hyp.worst_u = p.u;
            hyp.worst_v = p.v;
            hyp.note = std::string("first non-hyperbolic point is ") + to_string(p.type);
            break;
        }
    if (!hyp.passed && hyp.note.empty()) hyp.note = "non-hyperbolic points present";
    out.push_back(std::move(hyp));

    CheckResult asym;
    asym.name = "asymptotic";
    asym.tol = tol * std::max(1.0, s.max_abs_h12);
    asym.max_residual = std::max(s.max_abs_h11, s.max_abs_h22);
    asym.passed = asym.max_residual <= asym.tol;
    for (const PointInvariants& p : res.points) {
        if (std::max(std::abs(p.h.h11), std::abs(p.h.h22)) == asym.max_residual) {
            asym.worst_u = p.u;
            asym.worst_v = p.v;
            break;
        }
    }
    out.push_back(std::move(asym));

    CheckResult flat, minimal;
    flat.name = "affine-flat";
    flat.tol = tol;
    minimal.name = "affine-minimal";
    minimal.tol = tol;
    if (s.affine_ran) {
        for (const PointInvariants& p : res.points) {
            if (p.k_aff && std::abs(*p.k_aff) >= flat.max_residual) {
                flat.max_residual = std::abs(*p.k_aff);
                flat.worst_u = p.u;
                flat.worst_v = p.v;
            }
            if (p.h_aff && std::abs(*p.h_aff) >= minimal.max_residual) {
                minimal.max_residual = std::abs(*p.h_aff);
                minimal.worst_u = p.u;
                minimal.worst_v = p.v;
            }
        }
        flat.passed = flat.max_residual <= tol;
        minimal.passed = minimal.max_residual <= tol;
    } else {
        flat.passed = false;
        minimal.passed = false;
        flat.note = "skipped: " + s.skip_reason;
        minimal.note = "skipped: " + s.skip_reason;
    }
    out.push_back(std::move(flat));
    out.push_back(std::move(minimal));
    return out;
}

} // namespace

std::vector<CheckResult> verify_flat_minimal(const SurfaceGrid& grid, double tol) {
    AnalyzeOptions opt = AnalyzeOptions::grid_defaults();
    opt.asym_tol = std::max(opt.asym_tol, tol);
    return flat_minimal_checks(analyze_grid(grid, opt), tol);
}

std::vector<CheckResult> verify_flat_minimal(const Expr& x, const Expr& y, const Expr& z,
                                             const GridSpec& spec, double tol) {
    AnalyzeOptions opt = AnalyzeOptions::analytic_defaults();
    opt.asym_tol = std::max(opt.asym_tol, tol);
    return flat_minimal_checks(analyze_surface(x, y, z, spec, opt), tol);
}

CheckResult verify_ruled(const SurfaceGrid& grid, double tol) {
    grid.validate();
    const int nu = grid.nu(), nv = grid.nv();
    if (nu < 3) throw ArgumentError("ruled check needs nu >= 3");
    CheckResult c;
    c.name = "ruled";
    c.tol = tol;
    for (int iv = 0; iv < nv; ++iv)
        for (int iu = 1; iu + 1 < nu; ++iu) {
            const Vec3 d = grid.at(iu + 1, iv) - 2.0 * grid.at(iu, iv) + grid.at(iu - 1, iv);
            const double r = norm(d);
            if (r > c.max_residual) {
                c.max_residual = r;
                c.worst_u = grid.u[iu];
                c.worst_v = grid.v[iv];
            }
        }
    c.passed = c.max_residual <= tol;
    return c;
}

std::vector<CheckResult> verify_mc_normal_form(const SurfaceGrid& grid, const Expr& ell,
                                               const Expr& f, double tol) {
    grid.validate();
    if (!grid.has_frames()) throw ArgumentError("normal-form check needs stored frames");
    const int nu = grid.nu(), nv = grid.nv();
    const double hu = SurfaceGrid::uniform_step(grid.u, "u");
    const double hv = SurfaceGrid::uniform_step(grid.v, "v");
    const AxisStencils su(nu, hu), sv(nv, hv);

    // Frame entry fields and their derivative fields.
    std::vector<GridField> entries, d_u, d_v;
    entries.reserve(9);
    for (int e = 0; e < 9; ++e) {
        const int r = e / 3, col = e % 3;
        const std::vector<Vec3>& src = col == 0 ? grid.e1 : (col == 1 ? grid.e2 : grid.e3);
        std::vector<double> s(src.size());
        for (std::size_t i = 0; i < src.size(); ++i) s[i] = src[i][r];
        entries.emplace_back(&su, &sv, std::move(s));
    }
    for (int e = 0; e < 9; ++e) {
        d_u.push_back(entries[e].d_u(1));
        d_v.push_back(entries[e].d_v(1));
    }

    CheckResult c;
    c.name = "mc-normal-form";
    c.tol = tol;
    for (int iv = 0; iv < nv; ++iv) {
        const double vv = grid.v[iv];
        const double lv = ell.value(0.0, vv);
        const double fv = f.value(0.0, vv);
        for (int iu = 0; iu < nu; ++iu) {
            const double uu = grid.u[iu];
            const std::size_t i = grid.idx(iu, iv);
            const Mat3 E = Mat3::from_cols(grid.e1[i], grid.e2[i], grid.e3[i]);
            Mat3 dEu, dEv;
            for (int e = 0; e < 9; ++e) {
                dEu(e / 3, e % 3) = d_u[e].at(iu, iv);
                dEv(e / 3, e % 3) = d_v[e].at(iu, iv);
            }
            const Mat3 invE = inverse(E);
            const Mat3 Au = invE * dEu;
            const Mat3 Av = invE * dEv;
            Mat3 expected_u, expected_v;
            expected_u(2, 1) = 1.0;
            expected_v(0, 1) = uu * lv + fv;
            expected_v(0, 2) = lv;
            expected_v(2, 0) = 1.0;
            for (int r = 0; r < 3; ++r)
                for (int col = 0; col < 3; ++col) {
                    const double ru = std::abs(Au(r, col) - expected_u(r, col));
                    const double rv = std::abs(Av(r, col) - expected_v(r, col));
                    if (ru > c.max_residual) {
                        c.max_residual = ru;
                        c.worst_u = uu;
                        c.worst_v = vv;
                        char buf[64];
                        std::snprintf(buf, sizeof buf, "worst entry A_u(%d,%d)", r + 1, col + 1);
                        c.note = buf;
                    }
                    if (rv > c.max_residual) {
                        c.max_residual = rv;
                        c.worst_u = uu;
                        c.worst_v = vv;
                        char buf[64];
                        std::snprintf(buf, sizeof buf, "worst entry A_v(%d,%d)", r + 1, col + 1);
                        c.note = buf;
                    }
                }
        }
    }
    c.passed = c.max_residual <= tol;
    return {c};
}

CheckResult verify_frames_unimodular(const SurfaceGrid& grid, double tol) {
    if (!grid.has_frames()) throw ArgumentError("unimodularity check needs stored frames");
    CheckResult c;
    c.name = "frames-unimodular";
    c.tol = tol;
    for (int iv = 0; iv < grid.nv(); ++iv)
        for (int iu = 0; iu < grid.nu(); ++iu) {
            const std::size_t i = grid.idx(iu, iv);
            const double r =
                std::abs(det3(grid.e1[i], grid.e2[i], grid.e3[i]) - 1.0);
            if (r > c.max_residual) {
                c.max_residual = r;
                c.worst_u = grid.u[iu];
                c.worst_v = grid.v[iv];
            }
        }
    c.passed = c.max_residual <= tol;
    return c;
}

ImproperDetection detect_improper_sphere(const SurfaceGrid& grid, double tol) {
    if (!grid.has_frames()) throw ArgumentError("improper-sphere detection needs stored frames");
    const Vec3 ref = grid.e3.front();
    double worst = 0.0;
    for (const Vec3& e : grid.e3) worst = std::max(worst, norm(e - ref));
    return {worst <= tol, worst};
}

ImproperDetection detect_improper_from_analysis(const AnalysisResult& res, double tol) {
    const Vec3* ref = nullptr;
    double worst = 0.0;
    for (const PointInvariants& p : res.points) {
        if (!p.affine_normal) continue;
        if (!ref) {
            ref = &*p.affine_normal;
            continue;
        }
        worst = std::max(worst, norm(*p.affine_normal - *ref));
    }
    if (!ref) throw ArgumentError("analysis carries no affine normals");
    return {worst <= tol, worst};
}

double cross_check_closed_form(const std::string& preset, double a, const Expr* f,
                               const GridSpec& spec, double rk_step) {
    const SurfaceGrid closed = closed_form_preset(preset, a, f, spec, rk_step, false);
    GeneratorInput in;
    in.ell = Expr::parse(*closed.meta.ell);
    in.f = Expr::parse(*closed.meta.f);
    in.grid = spec;
    in.rk_step = rk_step;
    in.with_frames = false;
    const SurfaceGrid ode = generate_surface(in);
    double worst = 0.0;
    for (std::size_t i = 0; i < closed.points.size(); ++i)
        worst = std::max(worst, norm(closed.points[i] - ode.points[i]));
    return worst;
}

VerificationReport verify_grid(const SurfaceGrid& grid, const VerifyOptions& opt) {
    grid.validate();
    VerificationReport report;
    for (CheckResult& c : verify_flat_minimal(grid, opt.tol))
        report.checks.push_back(std::move(c));
    if (grid.nu() >= 3) report.checks.push_back(verify_ruled(grid, opt.ruled_tol));
    if (grid.has_frames()) {
        report.checks.push_back(verify_frames_unimodular(grid, std::max(opt.tol, 1e-8)));
        if (opt.ell && opt.f)
            for (CheckResult& c : verify_mc_normal_form(grid, *opt.ell, *opt.f, opt.mc_tol))
                report.checks.push_back(std::move(c));
        const ImproperDetection d = detect_improper_sphere(grid, opt.improper_tol);
        CheckResult info;
        info.name = "improper-sphere";
        info.counted = false;
        info.max_residual = d.max_e3_deviation;
        info.tol = opt.improper_tol;
        info.passed = true;
        info.note = d.improper ? "affine normal constant: improper affine sphere"
                               : "affine normal varies: not an improper affine sphere";
        if (opt.ell) {
            // Cross-check constancy of e3 against max |ell| on the sampled v's.
            double max_ell = 0.0;
            for (double vv : grid.v) max_ell = std::max(max_ell, std::abs(opt.ell->value(0.0, vv)));
            const bool ell_zero = max_ell <= opt.improper_tol;
            info.counted = true;
            info.passed = d.improper == ell_zero;
            if (!info.passed)
                info.note += "; inconsistent with max|ell| = " + std::to_string(max_ell);
        }
        report.checks.push_back(std::move(info));
    }
    return report;
}

std::string format_table(const VerificationReport& report) {
    std::string out;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-18s %-12s %-10s %-6s %-22s %s\n", "check", "max|residual|",
                  "tolerance", "status", "worst (u,v)", "note");
    out += buf;
    out += std::string(100, '-') + "\n";
    for (const CheckResult& c : report.checks) {
        std::snprintf(buf, sizeof buf, "%-18s %-12.3e %-10.1e %-6s (%.4g, %.4g)%*s %s\n",
                      c.name.c_str(), c.max_residual, c.tol,
                      c.counted ? (c.passed ? "pass" : "FAIL") : "info", c.worst_u, c.worst_v, 4,
                      "", c.note.c_str());
        out += buf;
    }
    out += report.passed() ? "overall: PASS\n" : "overall: FAIL\n";
    return out;
}

} // namespace affsurf
