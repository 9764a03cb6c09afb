/*
 * affsurf - equiaffine surface invariants and flat/minimal surface generation.
 *
 * C interface of the shared library. All objects are opaque handles created
 * and destroyed here; every fallible call returns an afs_status, and
 * afs_last_error() describes the most recent failure on the calling thread.
 */
#ifndef AFFSURF_H
#define AFFSURF_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum afs_status {
    AFS_OK = 0,
    AFS_ERROR_VERIFY = 1,       /* verification found failing checks */
    AFS_ERROR_PARSE = 2,        /* bad expression text or malformed file */
    AFS_ERROR_DIVERGED = 3,     /* integration produced a non-finite state */
    AFS_ERROR_INAPPLICABLE = 4, /* analysis preconditions not met */
    AFS_ERROR_DOMAIN = 5,       /* expression evaluated outside its domain */
    AFS_ERROR_ARGUMENT = 6,     /* invalid argument */
    AFS_ERROR_GEOMETRY = 7,     /* degenerate/singular geometric input */
    AFS_ERROR_IO = 8            /* file could not be written */
} afs_status;

typedef struct afs_grid afs_grid;
typedef struct afs_analysis afs_analysis;
typedef struct afs_verification afs_verification;

const char* afs_version(void);
/* Message for the last failing call on this thread ("" when none). */
const char* afs_last_error(void);

/* ---- generation -------------------------------------------------------- */

typedef struct afs_generate_params {
    const char* ell;  /* expression in v */
    const char* f;    /* expression in v */
    double u_min, u_max, v_min, v_max;
    int nu, nv;
    double rk_step;   /* <= 0 selects the default 1e-3 */
    int with_frames;  /* nonzero stores frame vectors in the grid */
} afs_generate_params;

afs_status afs_generate(const afs_generate_params* params, afs_grid** out);

/* Closed-form families: "saddle", "cubic", "cosh", "cos". `a` is ignored by
 * saddle/cubic; `f` may be NULL (cosh/cos forcing term). */
afs_status afs_generate_preset(const char* name, double a, const char* f,
                               const afs_generate_params* window, afs_grid** out);

/* ---- grids ------------------------------------------------------------- */

afs_status afs_grid_load(const char* path, afs_grid** out);
afs_status afs_grid_save(const afs_grid* grid, const char* path);
afs_status afs_grid_export_obj(const afs_grid* grid, const char* path);
afs_status afs_grid_export_csv(const afs_grid* grid, const char* path);
int afs_grid_nu(const afs_grid* grid);
int afs_grid_nv(const afs_grid* grid);
int afs_grid_has_frames(const afs_grid* grid);
afs_status afs_grid_point(const afs_grid* grid, int iu, int iv, double out_xyz[3]);
void afs_grid_free(afs_grid* grid);

/* ---- invariant analysis ------------------------------------------------- */

typedef struct afs_analysis_summary {
    int n_points, n_elliptic, n_hyperbolic, n_degenerate;
    int asymptotic;      /* hyperbolic everywhere with h11 = h22 = 0 */
    int affine_ran;      /* adapted-frame pass produced K_aff/H_aff */
    double max_abs_h11, max_abs_h22;
    double max_abs_k_aff, max_abs_h_aff; /* valid when affine_ran */
} afs_analysis_summary;

/* Analytic mode: exact derivatives of the three component expressions. */
afs_status afs_analyze_surface(const char* x, const char* y, const char* z,
                               double u_min, double u_max, double v_min, double v_max,
                               int nu, int nv, afs_analysis** out);
/* Grid mode: finite differences of the samples. */
afs_status afs_analyze_grid(const afs_grid* grid, afs_analysis** out);

afs_status afs_analysis_get_summary(const afs_analysis* a, afs_analysis_summary* out);
afs_status afs_analysis_write_json(const afs_analysis* a, const char* path);
afs_status afs_analysis_write_csv(const afs_analysis* a, const char* path);
void afs_analysis_free(afs_analysis* a);

/* ---- verification ------------------------------------------------------- */

/* ell/f may be NULL; when both are given (and frames are stored) the
 * Maurer-Cartan normal-form check runs too. tol <= 0 selects 1e-5. */
afs_status afs_verify(const afs_grid* grid, const char* ell, const char* f, double tol,
                      afs_verification** out);
int afs_verification_passed(const afs_verification* v);
afs_status afs_verification_write_json(const afs_verification* v, const char* path);
/* Human-readable table; free with afs_string_free. */
char* afs_verification_format_table(const afs_verification* v);
void afs_string_free(char* s);
void afs_verification_free(afs_verification* v);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* AFFSURF_H */
