#include "affsurf.h"

#include <cstring>
#include <string>

#include "affsurf/errors.hpp"
#include "affsurf/generator.hpp"
#include "affsurf/grid.hpp"
#include "affsurf/invariants.hpp"
#include "affsurf/io.hpp"
#include "affsurf/verify.hpp"

struct afs_grid {
    affsurf::SurfaceGrid g;
};
struct afs_analysis {
    affsurf::AnalysisResult r;
};
struct afs_verification {
    affsurf::VerificationReport r;
};

namespace {

thread_local std::string t_last_error;

afs_status fail(afs_status code, const std::string& message) {
    t_last_error = message;
    return code;
}

template <class Fn>
afs_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const affsurf::ParseError& e) {
        return fail(AFS_ERROR_PARSE, e.what());
    } catch (const affsurf::FormatError& e) {
        return fail(AFS_ERROR_PARSE, e.what());
    } catch (const affsurf::DivergenceError& e) {
        return fail(AFS_ERROR_DIVERGED, e.what());
    } catch (const affsurf::DomainError& e) {
        return fail(AFS_ERROR_DOMAIN, e.what());
    } catch (const affsurf::GeometryError& e) {
        return fail(AFS_ERROR_GEOMETRY, e.what());
    } catch (const affsurf::ArgumentError& e) {
        return fail(AFS_ERROR_ARGUMENT, e.what());
    } catch (const affsurf::Error& e) {
        return fail(AFS_ERROR_IO, e.what());
    } catch (const std::exception& e) {
        return fail(AFS_ERROR_ARGUMENT, e.what());
    }
}

afs_status require(bool cond, const char* message) {
    return cond ? AFS_OK : fail(AFS_ERROR_ARGUMENT, message);
}

affsurf::GridSpec spec_of(const afs_generate_params& p) {
    affsurf::GridSpec s;
    s.u_min = p.u_min;
    s.u_max = p.u_max;
    s.v_min = p.v_min;
    s.v_max = p.v_max;
    s.nu = p.nu;
    s.nv = p.nv;
    return s;
}

} // namespace

extern "C" {

const char* afs_version(void) { return "affsurf 0.1.0"; }

const char* afs_last_error(void) { return t_last_error.c_str(); }

afs_status afs_generate(const afs_generate_params* params, afs_grid** out) {
    if (require(params && out, "null argument") != AFS_OK) return AFS_ERROR_ARGUMENT;
    *out = nullptr;
    return guarded([&] {
        if (!params->ell || !params->f)
            throw affsurf::ArgumentError("generate requires ell and f expressions");
        affsurf::GeneratorInput in;
        in.ell = affsurf::Expr::parse(params->ell);
        in.f = affsurf::Expr::parse(params->f);
        in.grid = spec_of(*params);
        in.rk_step = params->rk_step > 0.0 ? params->rk_step : 1e-3;
        in.with_frames = params->with_frames != 0;
        *out = new afs_grid{affsurf::generate_surface(in)};
        return AFS_OK;
    });
}

afs_status afs_generate_preset(const char* name, double a, const char* f,
                               const afs_generate_params* window, afs_grid** out) {
    if (require(name && window && out, "null argument") != AFS_OK) return AFS_ERROR_ARGUMENT;
    *out = nullptr;
    return guarded([&] {
        affsurf::Expr f_expr;
        if (f && std::strlen(f) > 0) f_expr = affsurf::Expr::parse(f);
        const double step = window->rk_step > 0.0 ? window->rk_step : 1e-3;
        *out = new afs_grid{affsurf::closed_form_preset(
            name, a, f_expr.empty() ? nullptr : &f_expr, spec_of(*window), step,
            window->with_frames != 0)};
        return AFS_OK;
    });
}

afs_status afs_grid_load(const char* path, afs_grid** out) {
    if (require(path && out, "null argument") != AFS_OK) return AFS_ERROR_ARGUMENT;
    *out = nullptr;
    return guarded([&] {
        *out = new afs_grid{affsurf::read_grid_json(path)};
        return AFS_OK;
    });
}

afs_status afs_grid_save(const afs_grid* grid, const char* path) {
    if (require(grid && path, "null argument") != AFS_OK) return AFS_ERROR_ARGUMENT;
    return guarded([&] {
        affsurf::write_grid_json(grid->g, path);
        return AFS_OK;
    });
}

afs_status afs_grid_export_obj(const afs_grid* grid, const char* path) {
    if (require(grid && path, "null argument") != AFS_OK) return AFS_ERROR_ARGUMENT;
    return guarded([&] {
        affsurf::write_obj(grid->g, path);
        return AFS_OK;
    });
}

afs_status afs_grid_export_csv(const afs_grid* grid, const char* path) {
    if (require(grid && path, "null argument") != AFS_OK) return AFS_ERROR_ARGUMENT;
    return guarded([&] {
        affsurf::write_csv(grid->g, path);
        return AFS_OK;
    });
}

int afs_grid_nu(const afs_grid* grid) { return grid ? grid->g.nu() : 0; }
int afs_grid_nv(const afs_grid* grid) { return grid ? grid->g.nv() : 0; }
int afs_grid_has_frames(const afs_grid* grid) { return grid && grid->g.has_frames() ? 1 : 0; }

afs_status afs_grid_point(const afs_grid* grid, int iu, int iv, double out_xyz[3]) {
    if (require(grid && out_xyz, "null argument") != AFS_OK) return AFS_ERROR_ARGUMENT;
    if (iu < 0 || iu >= grid->g.nu() || iv < 0 || iv >= grid->g.nv())
        return fail(AFS_ERROR_ARGUMENT, "grid index out of range");
    const affsurf::Vec3& p = grid->g.at(iu, iv);
    out_xyz[0] = p.x;
    out_xyz[1] = p.y;
    out_xyz[2] = p.z;
    return AFS_OK;
}

void afs_grid_free(afs_grid* grid) { delete grid; }

afs_status afs_analyze_surface(const char* x, const char* y, const char* z, double u_min,
                               double u_max, double v_min, double v_max, int nu, int nv,
                               afs_analysis** out) {
    if (require(x && y && z && out, "null argument") != AFS_OK) return AFS_ERROR_ARGUMENT;
    *out = nullptr;
    return guarded([&] {
        affsurf::GridSpec spec{u_min, u_max, v_min, v_max, nu, nv};
        *out = new afs_analysis{affsurf::analyze_surface(
            affsurf::Expr::parse(x), affsurf::Expr::parse(y), affsurf::Expr::parse(z), spec)};
        return AFS_OK;
    });
}

afs_status afs_analyze_grid(const afs_grid* grid, afs_analysis** out) {
    if (require(grid && out, "null argument") != AFS_OK) return AFS_ERROR_ARGUMENT;
    *out = nullptr;
    return guarded([&] {
        *out = new afs_analysis{affsurf::analyze_grid(grid->g)};
        return AFS_OK;
    });
}

afs_status afs_analysis_get_summary(const afs_analysis* a, afs_analysis_summary* out) {
    if (require(a && out, "null argument") != AFS_OK) return AFS_ERROR_ARGUMENT;
    const affsurf::AnalysisSummary& s = a->r.summary;
    out->n_points = s.n_points;
    out->n_elliptic = s.n_elliptic;
    out->n_hyperbolic = s.n_hyperbolic;
    out->n_degenerate = s.n_degenerate;
    out->asymptotic = s.asymptotic ? 1 : 0;
    out->affine_ran = s.affine_ran ? 1 : 0;
    out->max_abs_h11 = s.max_abs_h11;
    out->max_abs_h22 = s.max_abs_h22;
    out->max_abs_k_aff = s.max_abs_k;
    out->max_abs_h_aff = s.max_abs_h;
    return AFS_OK;
}

afs_status afs_analysis_write_json(const afs_analysis* a, const char* path) {
    if (require(a && path, "null argument") != AFS_OK) return AFS_ERROR_ARGUMENT;
    return guarded([&] {
        affsurf::write_analysis_json(a->r, path);
        return AFS_OK;
    });
}

afs_status afs_analysis_write_csv(const afs_analysis* a, const char* path) {
    if (require(a && path, "null argument") != AFS_OK) return AFS_ERROR_ARGUMENT;
    return guarded([&] {
        affsurf::write_analysis_csv(a->r, path);
        return AFS_OK;
    });
}

void afs_analysis_free(afs_analysis* a) { delete a; }

afs_status afs_verify(const afs_grid* grid, const char* ell, const char* f, double tol,
                      afs_verification** out) {
    if (require(grid && out, "null argument") != AFS_OK) return AFS_ERROR_ARGUMENT;
    *out = nullptr;
    return guarded([&] {
        affsurf::VerifyOptions opt;
        if (ell && std::strlen(ell) > 0) opt.ell = affsurf::Expr::parse(ell);
        if (f && std::strlen(f) > 0) opt.f = affsurf::Expr::parse(f);
        if (tol > 0.0) opt.tol = tol;
        *out = new afs_verification{affsurf::verify_grid(grid->g, opt)};
        return AFS_OK;
    });
}

int afs_verification_passed(const afs_verification* v) {
    return v && v->r.passed() ? 1 : 0;
}

afs_status afs_verification_write_json(const afs_verification* v, const char* path) {
    if (require(v && path, "null argument") != AFS_OK) return AFS_ERROR_ARGUMENT;
    return guarded([&] {
        affsurf::write_verification_json(v->r, path);
        return AFS_OK;
    });
}

char* afs_verification_format_table(const afs_verification* v) {
    if (!v) return nullptr;
    const std::string table = affsurf::format_table(v->r);
    char* out = new char[table.size() + 1];
    std::memcpy(out, table.c_str(), table.size() + 1);
    return out;
}

void afs_string_free(char* s) { delete[] s; }

void afs_verification_free(afs_verification* v) { delete v; }

} // extern "C"
