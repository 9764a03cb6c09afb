#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <string>

#include "affsurf.h"

namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / "affsurf_capi_test";
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const char* name) const { return (path / name).string(); }
};

afs_generate_params base_params() {
    afs_generate_params p{};
    p.ell = "0";
    p.f = "6";
    p.u_min = -1.0;
    p.u_max = 1.0;
    p.v_min = -0.5;
    p.v_max = 0.5;
    p.nu = 41;
    p.nv = 41;
    p.rk_step = 1e-3;
    p.with_frames = 1;
    return p;
}

} // namespace

TEST_CASE("version and clean error state") {
    CHECK(std::strlen(afs_version()) > 0);
    CHECK(std::string(afs_last_error()).empty());
}

TEST_CASE("generate, save, load, verify, analyze through the C surface") {
    TempDir dir;
    afs_generate_params p = base_params();
    afs_grid* g = nullptr;
    REQUIRE(afs_generate(&p, &g) == AFS_OK);
    REQUIRE(g != nullptr);
    CHECK(afs_grid_nu(g) == 41);
    CHECK(afs_grid_nv(g) == 41);
    CHECK(afs_grid_has_frames(g) == 1);

    double xyz[3] = {};
    REQUIRE(afs_grid_point(g, 40, 40, xyz) == AFS_OK);
    // x = (u + 3v^2, v, uv + v^3) at (1, 0.5)
    CHECK(xyz[0] == doctest::Approx(1.75).epsilon(1e-9));
    CHECK(xyz[1] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(xyz[2] == doctest::Approx(0.625).epsilon(1e-9));
    CHECK(afs_grid_point(g, 41, 0, xyz) == AFS_ERROR_ARGUMENT);

    const std::string path = dir.file("g.json");
    REQUIRE(afs_grid_save(g, path.c_str()) == AFS_OK);
    afs_grid* loaded = nullptr;
    REQUIRE(afs_grid_load(path.c_str(), &loaded) == AFS_OK);
    CHECK(afs_grid_nu(loaded) == 41);

    afs_verification* v = nullptr;
    REQUIRE(afs_verify(loaded, "0", "6", 1e-5, &v) == AFS_OK);
    CHECK(afs_verification_passed(v) == 1);
    char* table = afs_verification_format_table(v);
    REQUIRE(table != nullptr);
    CHECK(std::string(table).find("overall: PASS") != std::string::npos);
    afs_string_free(table);
    REQUIRE(afs_verification_write_json(v, dir.file("v.json").c_str()) == AFS_OK);
    afs_verification_free(v);

    afs_analysis* a = nullptr;
    REQUIRE(afs_analyze_grid(loaded, &a) == AFS_OK);
    afs_analysis_summary s{};
    REQUIRE(afs_analysis_get_summary(a, &s) == AFS_OK);
    CHECK(s.n_points == 41 * 41);
    CHECK(s.n_hyperbolic == s.n_points);
    CHECK(s.asymptotic == 1);
    CHECK(s.affine_ran == 1);
    CHECK(s.max_abs_k_aff < 1e-5);
    CHECK(s.max_abs_h_aff < 1e-5);
    REQUIRE(afs_analysis_write_csv(a, dir.file("a.csv").c_str()) == AFS_OK);
    afs_analysis_free(a);

    REQUIRE(afs_grid_export_obj(g, dir.file("g.obj").c_str()) == AFS_OK);
    REQUIRE(afs_grid_export_csv(g, dir.file("g.csv").c_str()) == AFS_OK);

    afs_grid_free(loaded);
    afs_grid_free(g);
}

TEST_CASE("analytic surface analysis through the C surface") {
    afs_analysis* a = nullptr;
    REQUIRE(afs_analyze_surface("u", "v", "u*v", -1, 1, -1, 1, 15, 15, &a) == AFS_OK);
    afs_analysis_summary s{};
    afs_analysis_get_summary(a, &s);
    CHECK(s.asymptotic == 1);
    CHECK(s.max_abs_k_aff <= 1e-12);
    CHECK(s.max_abs_h_aff <= 1e-12);
    afs_analysis_free(a);

    // Elliptic input: the call succeeds, the summary reports the skip.
    REQUIRE(afs_analyze_surface("u", "v", "u^2+v^2", -1, 1, -1, 1, 9, 9, &a) == AFS_OK);
    afs_analysis_get_summary(a, &s);
    CHECK(s.asymptotic == 0);
    CHECK(s.affine_ran == 0);
    CHECK(s.n_elliptic == 81);
    afs_analysis_free(a);
}

TEST_CASE("error codes and messages") {
    afs_grid* g = nullptr;
    afs_generate_params p = base_params();

    p.ell = "cosh(3*v";
    CHECK(afs_generate(&p, &g) == AFS_ERROR_PARSE);
    CHECK(std::string(afs_last_error()).find("offset 9") != std::string::npos);
    CHECK(g == nullptr);

    p.ell = "exp(40*v)";
    p.v_min = 0.0;
    p.v_max = 3.0;
    p.rk_step = 1e-2;
    CHECK(afs_generate(&p, &g) == AFS_ERROR_DIVERGED);
    CHECK(std::string(afs_last_error()).find("non-finite") != std::string::npos);

    p = base_params();
    p.ell = "log(v-1)";
    CHECK(afs_generate(&p, &g) == AFS_ERROR_DOMAIN);

    p = base_params();
    p.nu = 1;
    CHECK(afs_generate(&p, &g) == AFS_ERROR_ARGUMENT);

    CHECK(afs_grid_load("/no/such/file.json", &g) == AFS_ERROR_PARSE);
    CHECK(afs_generate(nullptr, &g) == AFS_ERROR_ARGUMENT);

    afs_analysis* a = nullptr;
    CHECK(afs_analyze_surface("q", "v", "u*v", -1, 1, -1, 1, 9, 9, &a) == AFS_ERROR_PARSE);
    CHECK(std::string(afs_last_error()).find("unknown identifier") != std::string::npos);
}

TEST_CASE("presets through the C surface") {
    afs_generate_params window = base_params();
    window.v_min = -1.0;
    window.v_max = 1.0;
    afs_grid* g = nullptr;
    REQUIRE(afs_generate_preset("cosh", 3.0, nullptr, &window, &g) == AFS_OK);
    CHECK(afs_grid_nu(g) == 41);
    afs_grid_free(g);
    CHECK(afs_generate_preset("torus", 3.0, nullptr, &window, &g) == AFS_ERROR_ARGUMENT);
}

TEST_CASE("verification failure is reported, not an error") {
    afs_generate_params p = base_params();
    afs_grid* g = nullptr;
    REQUIRE(afs_generate(&p, &g) == AFS_OK);
    // Claiming the wrong f makes the normal-form check fail.
    afs_verification* v = nullptr;
    REQUIRE(afs_verify(g, "0", "0", 1e-5, &v) == AFS_OK);
    CHECK(afs_verification_passed(v) == 0);
    afs_verification_free(v);
    afs_grid_free(g);
}
