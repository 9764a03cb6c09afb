// affsurf command-line tool: generate / analyze / verify / export.
// Talks to the shared library exclusively through the C API in affsurf.h.

#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "affsurf.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitParse = 2;
constexpr int kExitDiverged = 3;
constexpr int kExitInapplicable = 4;

int exit_code_for(afs_status s, bool analysis_context) {
    switch (s) {
        case AFS_OK: return kExitOk;
        case AFS_ERROR_VERIFY: return kExitVerifyFailed;
        case AFS_ERROR_DIVERGED: return kExitDiverged;
        case AFS_ERROR_INAPPLICABLE: return kExitInapplicable;
        case AFS_ERROR_GEOMETRY: return analysis_context ? kExitInapplicable : kExitParse;
        case AFS_ERROR_PARSE:
        case AFS_ERROR_DOMAIN:
        case AFS_ERROR_ARGUMENT:
        case AFS_ERROR_IO:
        default: return kExitParse;
    }
}

int report_failure(afs_status s, bool analysis_context = false) {
    std::fprintf(stderr, "error: %s\n", afs_last_error());
    return exit_code_for(s, analysis_context);
}

struct GridArgs {
    double u_min = -1.0, u_max = 1.0, v_min = -1.0, v_max = 1.0;
    int nu = 41, nv = 41;

    void attach(CLI::App* cmd) {
        cmd->add_option("--u-min", u_min, "lower u bound");
        cmd->add_option("--u-max", u_max, "upper u bound");
        cmd->add_option("--v-min", v_min, "lower v bound");
        cmd->add_option("--v-max", v_max, "upper v bound");
        cmd->add_option("--nu", nu, "samples along u");
        cmd->add_option("--nv", nv, "samples along v");
    }

    afs_generate_params params() const {
        afs_generate_params p{};
        p.u_min = u_min;
        p.u_max = u_max;
        p.v_min = v_min;
        p.v_max = v_max;
        p.nu = nu;
        p.nv = nv;
        return p;
    }
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (;;) {
        const std::size_t at = s.find(sep, start);
        if (at == std::string::npos) {
            parts.push_back(s.substr(start));
            return parts;
        }
        parts.push_back(s.substr(start, at - start));
        start = at + 1;
    }
}

int run_generate(const GridArgs& grid, const std::string& ell, const std::string& f,
                 double rk_step, bool frames, const std::string& preset, double a,
                 const std::string& out_path, const std::string& obj_path) {
    afs_generate_params p = grid.params();
    p.ell = ell.c_str();
    p.f = f.c_str();
    p.rk_step = rk_step;
    p.with_frames = frames ? 1 : 0;

    afs_grid* g = nullptr;
    afs_status s;
    if (!preset.empty())
        s = afs_generate_preset(preset.c_str(), a, f.empty() ? nullptr : f.c_str(), &p, &g);
    else
        s = afs_generate(&p, &g);
    if (s != AFS_OK) return report_failure(s);

    s = afs_grid_save(g, out_path.c_str());
    if (s == AFS_OK && !obj_path.empty()) s = afs_grid_export_obj(g, obj_path.c_str());
    if (s != AFS_OK) {
        afs_grid_free(g);
        return report_failure(s);
    }
    std::printf("wrote %s (%d x %d points%s)\n", out_path.c_str(), afs_grid_nu(g),
                afs_grid_nv(g), afs_grid_has_frames(g) ? ", frames" : "");
    afs_grid_free(g);
    return kExitOk;
}

int run_analyze(const std::string& in_path, const std::string& surface, const GridArgs& grid,
                const std::string& report_path, const std::string& csv_path) {
    afs_analysis* a = nullptr;
    afs_status s;
    if (!surface.empty()) {
        const std::vector<std::string> parts = split(surface, ';');
        if (parts.size() != 3) {
            std::fprintf(stderr, "error: --surface needs three ';'-separated expressions\n");
            return kExitParse;
        }
        s = afs_analyze_surface(parts[0].c_str(), parts[1].c_str(), parts[2].c_str(),
                                grid.u_min, grid.u_max, grid.v_min, grid.v_max, grid.nu,
                                grid.nv, &a);
    } else {
        afs_grid* g = nullptr;
        s = afs_grid_load(in_path.c_str(), &g);
        if (s != AFS_OK) return report_failure(s, true);
        s = afs_analyze_grid(g, &a);
        afs_grid_free(g);
    }
    if (s != AFS_OK) return report_failure(s, true);

    afs_analysis_summary sum{};
    afs_analysis_get_summary(a, &sum);
    std::printf("points: %d  hyperbolic: %d  elliptic: %d  degenerate: %d\n", sum.n_points,
                sum.n_hyperbolic, sum.n_elliptic, sum.n_degenerate);
    std::printf("asymptotic: %s  max|h11| = %.3e  max|h22| = %.3e\n",
                sum.asymptotic ? "yes" : "no", sum.max_abs_h11, sum.max_abs_h22);
    if (sum.affine_ran)
        std::printf("max|K_aff| = %.3e  max|H_aff| = %.3e\n", sum.max_abs_k_aff,
                    sum.max_abs_h_aff);
    else
        std::printf("affine invariants skipped (surface not hyperbolic-asymptotic)\n");

    if (!report_path.empty()) s = afs_analysis_write_json(a, report_path.c_str());
    if (s == AFS_OK && !csv_path.empty()) s = afs_analysis_write_csv(a, csv_path.c_str());
    const bool ran = sum.affine_ran != 0;
    afs_analysis_free(a);
    if (s != AFS_OK) return report_failure(s, true);
    return ran ? kExitOk : kExitInapplicable;
}

int run_verify(const std::string& in_path, const std::string& ell, const std::string& f,
               double tol, const std::string& json_path) {
    afs_grid* g = nullptr;
    afs_status s = afs_grid_load(in_path.c_str(), &g);
    if (s != AFS_OK) return report_failure(s);

    afs_verification* v = nullptr;
    s = afs_verify(g, ell.empty() ? nullptr : ell.c_str(), f.empty() ? nullptr : f.c_str(),
                   tol, &v);
    afs_grid_free(g);
    if (s != AFS_OK) {
        // A geometric failure while checking means the surface does not verify.
        const int code = exit_code_for(s, false);
        std::fprintf(stderr, "error: %s\n", afs_last_error());
        return s == AFS_ERROR_GEOMETRY ? kExitVerifyFailed : code;
    }

    char* table = afs_verification_format_table(v);
    if (table) {
        std::fputs(table, stdout);
        afs_string_free(table);
    }
    if (!json_path.empty()) {
        s = afs_verification_write_json(v, json_path.c_str());
        if (s != AFS_OK) {
            afs_verification_free(v);
            return report_failure(s);
        }
    }
    const bool ok = afs_verification_passed(v) != 0;
    afs_verification_free(v);
    return ok ? kExitOk : kExitVerifyFailed;
}

int run_export(const std::string& in_path, const std::string& obj_path,
               const std::string& csv_path) {
    afs_grid* g = nullptr;
    afs_status s = afs_grid_load(in_path.c_str(), &g);
    if (s != AFS_OK) return report_failure(s);
    if (!obj_path.empty() && s == AFS_OK) s = afs_grid_export_obj(g, obj_path.c_str());
    if (!csv_path.empty() && s == AFS_OK) s = afs_grid_export_csv(g, csv_path.c_str());
    afs_grid_free(g);
    if (s != AFS_OK) return report_failure(s);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string("affsurf - hyperbolic affine flat, affine minimal surfaces (") +
                 afs_version() + ")"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read options from a config file");

    // generate
    auto* gen = app.add_subcommand("generate",
                                   "integrate a surface from ell(v), f(v) and write a grid file");
    GridArgs gen_grid;
    gen_grid.attach(gen);
    std::string ell = "0", f = "0", preset, gen_out = "surface.json", gen_obj;
    double rk_step = 1e-3, preset_a = 3.0;
    bool frames = false;
    gen->add_option("--ell", ell, "expression for ell(v)");
    gen->add_option("--f", f, "expression for f(v)");
    gen->add_option("--rk-step", rk_step, "integrator step (default 1e-3)");
    gen->add_option("--preset", preset, "closed form: saddle, cubic, cosh, cos");
    gen->add_option("--a", preset_a, "parameter a for cosh/cos presets");
    gen->add_option("--out", gen_out, "output grid file (JSON)");
    gen->add_option("--obj", gen_obj, "also write an OBJ mesh");
    gen->add_flag("--frames", frames, "store frame vectors in the grid file");

    // analyze
    auto* ana = app.add_subcommand("analyze", "compute invariants of a surface");
    GridArgs ana_grid;
    ana_grid.attach(ana);
    std::string ana_in, surface, report_path, ana_csv;
    auto* in_opt = ana->add_option("--in", ana_in, "grid file to analyze (finite differences)");
    auto* surf_opt =
        ana->add_option("--surface", surface, "three ';'-separated expressions (exact jets)");
    in_opt->excludes(surf_opt);
    ana->add_option("--report", report_path, "write per-point JSON report");
    ana->add_option("--csv", ana_csv, "write per-point CSV report");

    // verify
    auto* ver = app.add_subcommand("verify", "run the verification suite on a grid file");
    std::string ver_in, ver_ell, ver_f, ver_json;
    double tol = 1e-5;
    ver->add_option("--in", ver_in, "grid file to verify")->required();
    ver->add_option("--ell", ver_ell, "expected ell(v) (enables the normal-form check)");
    ver->add_option("--f", ver_f, "expected f(v)");
    ver->add_option("--tol", tol, "flat/minimal tolerance (default 1e-5)");
    ver->add_option("--json", ver_json, "write the report as JSON");

    // export
    auto* exp = app.add_subcommand("export", "convert a grid file to OBJ / CSV");
    std::string exp_in, exp_obj, exp_csv;
    exp->add_option("--in", exp_in, "grid file")->required();
    exp->add_option("--obj", exp_obj, "OBJ mesh output");
    exp->add_option("--csv", exp_csv, "CSV point table output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitParse;
    }

    if (gen->parsed())
        return run_generate(gen_grid, ell, f, rk_step, frames, preset, preset_a, gen_out,
                            gen_obj);
    if (ana->parsed()) {
        if (ana_in.empty() && surface.empty()) {
            std::fprintf(stderr, "error: analyze needs --in or --surface\n");
            return kExitParse;
        }
        return run_analyze(ana_in, surface, ana_grid, report_path, ana_csv);
    }
    if (ver->parsed()) return run_verify(ver_in, ver_ell, ver_f, tol, ver_json);
    if (exp->parsed()) {
        if (exp_obj.empty() && exp_csv.empty()) {
            std::fprintf(stderr, "error: export needs --obj or --csv\n");
            return kExitParse;
        }
        return run_export(exp_in, exp_obj, exp_csv);
    }
    return kExitParse;
}
