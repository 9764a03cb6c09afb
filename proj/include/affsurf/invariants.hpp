#pragma once

#include <optional>
#include <string>
#include <vector>

#include "affsurf/expr.hpp"
#include "affsurf/frames.hpp"
#include "affsurf/grid.hpp"

namespace affsurf {

// Second-order coefficients h_ij of a 0-adapted frame.
struct HForm {
    double h11 = 0.0, h12 = 0.0, h22 = 0.0;
    double det() const { return h11 * h22 - h12 * h12; }
    double scale() const;
};

enum class SurfaceType { Elliptic, Hyperbolic, Degenerate };
const char* to_string(SurfaceType t);

// Third-order coefficients l_ij of a 2-adapted frame. `mismatch` records the
// gap between the two independent reads of l12.
struct LForm {
    double l11 = 0.0, l12 = 0.0, l22 = 0.0;
    double mismatch = 0.0;
};

struct PointInvariants {
    double u = 0.0, v = 0.0;
    HForm h;
    SurfaceType type = SurfaceType::Degenerate;
    std::optional<double> k_aff, h_aff;
    std::optional<LForm> l;
    std::optional<Vec3> affine_normal;
};

struct AnalysisSummary {
    int n_points = 0, n_elliptic = 0, n_hyperbolic = 0, n_degenerate = 0;
    double max_abs_h11 = 0.0, max_abs_h22 = 0.0, max_abs_h12 = 0.0;
    bool asymptotic = false;       // hyperbolic everywhere and h11 = h22 = 0
    bool affine_ran = false;       // the adapted-frame pass produced K/H/l
    std::string skip_reason;
    double max_abs_k = 0.0, max_abs_h = 0.0;
};

struct AnalysisResult {
    std::vector<double> u, v;
    std::vector<PointInvariants> points; // row-major, v outer
    AnalysisSummary summary;
    bool analytic_mode = false;
};

struct AnalyzeOptions {
    double degenerate_tol = 1e-9;  // |det h| <= tol * scale^2 -> degenerate
    double asym_tol = 1e-9;        // max(|h11|,|h22|) <= tol * max(1,|h12|)
    double l_mismatch_tol = 1e-6;  // allowed gap between the two l12 reads
    bool affine_steps = true;

    static AnalyzeOptions analytic_defaults() { return {}; }
    static AnalyzeOptions grid_defaults() {
        AnalyzeOptions o;
        o.asym_tol = 1e-5;
        o.l_mismatch_tol = 1e-4;
        return o;
    }
};

// ---- pointwise operations -------------------------------------------------

// h_ij jets for the cross-product completion: h_ij = det[xu, xv, x_ij].
struct HJets {
    Jet h11, h12, h22;
};
HJets h_form_jets(const SurfaceJet& sj);
HForm h_form(const SurfaceJet& sj);

// Sign of det h against a scale-aware threshold.
SurfaceType classify(const HForm& h, double degenerate_tol = 1e-9);

// Coefficient of the invariant metric 2 sqrt(h12) du dv.
double i_aff_coefficient(double h12);

// Affine Gauss curvature from an order-2 jet of h12 > 0:
//   K = -(1/sqrt(h12)) d^2/dudv [ log sqrt(h12) ].
double gauss_curvature(const Jet& h12);

double mean_curvature(const LForm& l);

// diag(h^(-1/4), h^(-1/4), h^(1/2)); throws GeometryError unless h12 > 0.
JMat3 one_adapted_gauge(const Jet& h12);

// Shear (r1, r2) canceling the omega^3_3 component of a 1-adapted frame;
// returns jets so the gauged frame can be differentiated once more.
std::pair<Jet, Jet> two_adapted_shear(const JMat3& E1, const JVec3& xu, const JVec3& xv);

// Unipotent gauge with third column (r1, r2, 1).
JMat3 shear_gauge(const Jet& r1, const Jet& r2);

// Generic Cartan reads against the frame's own coframe (work for relabeled
// or rescaled frames, not just the du/dv-aligned normal form).
HForm h_from_frame(const JMat3& E, const JVec3& xu, const JVec3& xv, double* h21 = nullptr);
LForm l_form(const JMat3& E2, const JVec3& xu, const JVec3& xv, double mismatch_tol = 1e-6);

// Full pointwise ladder in analytic mode.
struct LadderPoint {
    JVec3 xu, xv;
    HJets hj;
    HForm h;
    SurfaceType type = SurfaceType::Degenerate;
    bool hflip = false;            // orientation fix (e1,e2,e3) -> (e2,e1,-e3) applied
    JMat3 E0, E1, E2;
    Jet r1, r2;
    double k_aff = 0.0;
    LForm l;
    double h_aff = 0.0;
    Vec3 affine_normal;
};
LadderPoint run_ladder(const SurfaceJet& sj, const AnalyzeOptions& opt);

// ---- whole-grid analyzers --------------------------------------------------

// Analytic mode: exact jets of the component expressions.
AnalysisResult analyze_surface(const Expr& x, const Expr& y, const Expr& z,
                               const GridSpec& spec,
                               const AnalyzeOptions& opt = AnalyzeOptions::analytic_defaults());

// Grid mode: 4th-order finite differences of the samples (one-sided at the
// boundary), cascading through the same adaptation ladder.
AnalysisResult analyze_grid(const SurfaceGrid& grid,
                            const AnalyzeOptions& opt = AnalyzeOptions::grid_defaults());

struct AsymptoticCheck {
    bool asymptotic = false;
    double max_abs_h11 = 0.0, max_abs_h22 = 0.0;
};
AsymptoticCheck check_asymptotic(const AnalysisResult& result);

} // namespace affsurf
