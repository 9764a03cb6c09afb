#include "affsurf/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "affsurf/errors.hpp"
#include "affsurf/verify.hpp"

namespace affsurf {

using nlohmann::json;

std::string format_full(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_text_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open '" + tmp + "' for writing");
        out << content;
        if (!out) throw Error("write to '" + tmp + "' failed");
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw Error("cannot rename '" + tmp + "' to '" + path + "'");
    }
}

namespace {

void append_vec3(std::string& out, const Vec3& p) {
    out += '[';
    out += format_full(p.x);
    out += ',';
    out += format_full(p.y);
    out += ',';
    out += format_full(p.z);
    out += ']';
}

void append_vec3_rows(std::string& out, const SurfaceGrid& g, const std::vector<Vec3>& arr) {
    out += "[\n";
    for (int iv = 0; iv < g.nv(); ++iv) {
        out += "    [";
        for (int iu = 0; iu < g.nu(); ++iu) {
            if (iu) out += ',';
            append_vec3(out, arr[g.idx(iu, iv)]);
        }
        out += iv + 1 < g.nv() ? "],\n" : "]\n";
    }
    out += "  ]";
}

void append_axis(std::string& out, const std::vector<double>& axis) {
    out += '[';
    for (std::size_t i = 0; i < axis.size(); ++i) {
        if (i) out += ',';
        out += format_full(axis[i]);
    }
    out += ']';
}

std::string json_escape(const std::string& s) {
    return json(s).dump();
}

} // namespace

void write_grid_json(const SurfaceGrid& grid, const std::string& path) {
    grid.validate();
    std::string out;
    out.reserve(grid.points.size() * 72 + 4096);
    out += "{\n  \"format\": \"affine-surface-grid/1\",\n  \"meta\": {";
    bool first = true;
    auto field = [&](const char* key, const std::string& value, bool quoted) {
        if (!first) out += ", ";
        first = false;
        out += '"';
        out += key;
        out += "\": ";
        out += quoted ? json_escape(value) : value;
    };
    if (grid.meta.ell) field("ell", *grid.meta.ell, true);
    if (grid.meta.f) field("f", *grid.meta.f, true);
    if (grid.meta.preset) field("preset", *grid.meta.preset, true);
    if (grid.meta.rk_step) field("rk_step", format_full(*grid.meta.rk_step), false);
    if (!grid.meta.generated_by.empty()) field("generated_by", grid.meta.generated_by, true);
    out += "},\n  \"u\": ";
    append_axis(out, grid.u);
    out += ",\n  \"v\": ";
    append_axis(out, grid.v);
    out += ",\n  \"points\": ";
    append_vec3_rows(out, grid, grid.points);
    if (grid.has_frames()) {
        out += ",\n  \"frames\": {\n  \"e1\": ";
        append_vec3_rows(out, grid, grid.e1);
        out += ",\n  \"e2\": ";
        append_vec3_rows(out, grid, grid.e2);
        out += ",\n  \"e3\": ";
        append_vec3_rows(out, grid, grid.e3);
        out += "\n  }";
    }
    out += "\n}\n";
    write_text_atomic(path, out);
}

namespace {

std::vector<double> read_axis(const json& j, const char* name) {
    if (!j.contains(name) || !j[name].is_array())
        throw FormatError(std::string("missing or invalid '") + name + "' array");
    std::vector<double> axis;
    for (const auto& e : j[name]) {
        if (!e.is_number()) throw FormatError(std::string("non-numeric entry in '") + name + "'");
        axis.push_back(e.get<double>());
    }
    return axis;
}

std::vector<Vec3> read_vec3_rows(const json& arr, std::size_t nv, std::size_t nu,
                                 const char* what) {
    if (!arr.is_array() || arr.size() != nv)
        throw FormatError(std::string(what) + ": expected " + std::to_string(nv) + " rows");
    std::vector<Vec3> out;
    out.reserve(nu * nv);
    for (const auto& row : arr) {
        if (!row.is_array() || row.size() != nu)
            throw FormatError(std::string(what) + ": row length != nu");
        for (const auto& p : row) {
            if (!p.is_array() || p.size() != 3 || !p[0].is_number() || !p[1].is_number() ||
                !p[2].is_number())
                throw FormatError(std::string(what) + ": entries must be [x,y,z]");
            out.push_back({p[0].get<double>(), p[1].get<double>(), p[2].get<double>()});
        }
    }
    return out;
}

} // namespace

SurfaceGrid read_grid_json(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw FormatError("invalid JSON in '" + path + "': " + e.what());
    }
    if (!j.is_object() || j.value("format", "") != std::string("affine-surface-grid/1"))
        throw FormatError("not an affine-surface-grid/1 file");

    SurfaceGrid g;
    g.u = read_axis(j, "u");
    g.v = read_axis(j, "v");
    if (!j.contains("points")) throw FormatError("missing 'points'");
    g.points = read_vec3_rows(j["points"], g.v.size(), g.u.size(), "points");
    if (j.contains("frames")) {
        const json& fr = j["frames"];
        if (!fr.is_object() || !fr.contains("e1") || !fr.contains("e2") || !fr.contains("e3"))
            throw FormatError("'frames' must hold e1, e2 and e3");
        g.e1 = read_vec3_rows(fr["e1"], g.v.size(), g.u.size(), "frames.e1");
        g.e2 = read_vec3_rows(fr["e2"], g.v.size(), g.u.size(), "frames.e2");
        g.e3 = read_vec3_rows(fr["e3"], g.v.size(), g.u.size(), "frames.e3");
    }
    if (j.contains("meta") && j["meta"].is_object()) {
        const json& m = j["meta"];
        if (m.contains("ell") && m["ell"].is_string()) g.meta.ell = m["ell"].get<std::string>();
        if (m.contains("f") && m["f"].is_string()) g.meta.f = m["f"].get<std::string>();
        if (m.contains("preset") && m["preset"].is_string())
            g.meta.preset = m["preset"].get<std::string>();
        if (m.contains("rk_step") && m["rk_step"].is_number())
            g.meta.rk_step = m["rk_step"].get<double>();
        if (m.contains("generated_by") && m["generated_by"].is_string())
            g.meta.generated_by = m["generated_by"].get<std::string>();
    }
    try {
        g.validate();
    } catch (const FormatError&) {
        throw;
    } catch (const Error& e) {
        throw FormatError(e.what());
    }
    return g;
}

void write_obj(const SurfaceGrid& grid, const std::string& path) {
    grid.validate();
    const int nu = grid.nu(), nv = grid.nv();
    std::string out;
    out.reserve(grid.points.size() * 64);
    out += "# affsurf surface grid, nu=" + std::to_string(nu) + " nv=" + std::to_string(nv) + "\n";
    for (const Vec3& p : grid.points) {
        out += "v ";
        out += format_full(p.x);
        out += ' ';
        out += format_full(p.y);
        out += ' ';
        out += format_full(p.z);
        out += '\n';
    }
    // Quads split counter-clockwise in the (u,v) parameter square.
    for (int iv = 0; iv + 1 < nv; ++iv)
        for (int iu = 0; iu + 1 < nu; ++iu) {
            const long a = static_cast<long>(iv) * nu + iu + 1;
            const long b = a + 1;
            const long c = b + nu;
            const long d = a + nu;
            out += "f " + std::to_string(a) + ' ' + std::to_string(b) + ' ' + std::to_string(c) +
                   "\nf " + std::to_string(a) + ' ' + std::to_string(c) + ' ' +
                   std::to_string(d) + '\n';
        }
    write_text_atomic(path, out);
}

void write_csv(const SurfaceGrid& grid, const std::string& path) {
    grid.validate();
    std::string out = "u,v,x,y,z\n";
    for (int iv = 0; iv < grid.nv(); ++iv)
        for (int iu = 0; iu < grid.nu(); ++iu) {
            const Vec3& p = grid.at(iu, iv);
            out += format_full(grid.u[iu]);
            out += ',';
            out += format_full(grid.v[iv]);
            out += ',';
            out += format_full(p.x);
            out += ',';
            out += format_full(p.y);
            out += ',';
            out += format_full(p.z);
            out += '\n';
        }
    write_text_atomic(path, out);
}

namespace {

json summary_to_json(const AnalysisSummary& s) {
    json j;
    j["points"] = s.n_points;
    j["elliptic"] = s.n_elliptic;
    j["hyperbolic"] = s.n_hyperbolic;
    j["degenerate"] = s.n_degenerate;
    j["max_abs_h11"] = s.max_abs_h11;
    j["max_abs_h22"] = s.max_abs_h22;
    j["asymptotic"] = s.asymptotic;
    j["affine_ran"] = s.affine_ran;
    if (!s.skip_reason.empty()) j["skip_reason"] = s.skip_reason;
    if (s.affine_ran) {
        j["max_abs_k_aff"] = s.max_abs_k;
        j["max_abs_h_aff"] = s.max_abs_h;
    }
    return j;
}

} // namespace

void write_analysis_json(const AnalysisResult& res, const std::string& path) {
    json j;
    j["format"] = "affine-invariant-report/1";
    j["mode"] = res.analytic_mode ? "analytic" : "grid";
    j["summary"] = summary_to_json(res.summary);
    json pts = json::array();
    for (const PointInvariants& p : res.points) {
        json e;
        e["u"] = p.u;
        e["v"] = p.v;
        e["h"] = {p.h.h11, p.h.h12, p.h.h22};
        e["type"] = to_string(p.type);
        if (p.k_aff) e["k_aff"] = *p.k_aff;
        if (p.h_aff) e["h_aff"] = *p.h_aff;
        if (p.l) e["l"] = {p.l->l11, p.l->l12, p.l->l22};
        if (p.affine_normal)
            e["affine_normal"] = {p.affine_normal->x, p.affine_normal->y, p.affine_normal->z};
        pts.push_back(std::move(e));
    }
    j["points"] = std::move(pts);
    write_text_atomic(path, j.dump(1) + "\n");
}

void write_analysis_csv(const AnalysisResult& res, const std::string& path) {
    std::string out = "u,v,h11,h12,h22,type,k_aff,h_aff,l11,l12,l22,e3_x,e3_y,e3_z\n";
    for (const PointInvariants& p : res.points) {
        out += format_full(p.u);
        out += ',';
        out += format_full(p.v);
        out += ',';
        out += format_full(p.h.h11);
        out += ',';
        out += format_full(p.h.h12);
        out += ',';
        out += format_full(p.h.h22);
        out += ',';
        out += to_string(p.type);
        auto opt = [&](bool present, double value) {
            out += ',';
            if (present) out += format_full(value);
        };
        opt(p.k_aff.has_value(), p.k_aff.value_or(0));
        opt(p.h_aff.has_value(), p.h_aff.value_or(0));
        opt(p.l.has_value(), p.l ? p.l->l11 : 0);
        opt(p.l.has_value(), p.l ? p.l->l12 : 0);
        opt(p.l.has_value(), p.l ? p.l->l22 : 0);
        opt(p.affine_normal.has_value(), p.affine_normal ? p.affine_normal->x : 0);
        opt(p.affine_normal.has_value(), p.affine_normal ? p.affine_normal->y : 0);
        opt(p.affine_normal.has_value(), p.affine_normal ? p.affine_normal->z : 0);
        out += '\n';
    }
    write_text_atomic(path, out);
}

void write_verification_json(const VerificationReport& report, const std::string& path) {
    json j;
    j["format"] = "affine-verification-report/1";
    j["passed"] = report.passed();
    json checks = json::array();
    for (const CheckResult& c : report.checks) {
        json e;
        e["name"] = c.name;
        e["max_residual"] = c.max_residual;
        e["tolerance"] = c.tol;
        e["passed"] = c.passed;
        e["counted"] = c.counted;
        e["worst"] = {{"u", c.worst_u}, {"v", c.worst_v}};
        if (!c.note.empty()) e["note"] = c.note;
        checks.push_back(std::move(e));
    }
    j["checks"] = std::move(checks);
    write_text_atomic(path, j.dump(1) + "\n");
}

} // namespace affsurf
