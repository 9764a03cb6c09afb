#pragma once

#include "affsurf/linalg.hpp"

namespace affsurf {

// Position jet of a parametrized surface at one point: each component of x
// carries its mixed partials up to total order 4.
struct SurfaceJet {
    JVec3 x;

    // d^{i+j} x / du^i dv^j as a plain vector.
    Vec3 partial(int i, int j) const {
        return {x.x.partial(i, j), x.y.partial(i, j), x.z.partial(i, j)};
    }
};

// Unimodular frame: columns e1, e2, e3 with det = 1.
struct UnimodularFrame {
    Vec3 e1, e2, e3;
    Mat3 matrix() const { return Mat3::from_cols(e1, e2, e3); }
};

// Pulled-back Maurer-Cartan coefficient matrices of a frame field E(u,v):
// dE/du = E * Au, dE/dv = E * Av. Entry (i,j) of Au is the du-component of
// the form measuring the e_i component of d(e_j).
struct MCCoefficients {
    Mat3 Au, Av;
};

// Tangent-spanning unimodular completion: (e1, e2, e3) = (xu, xv, n/|n|^2)
// with n = xu x xv. Throws GeometryError when |n| < 1e-12.
UnimodularFrame complete_unimodular(const Vec3& xu, const Vec3& xv);

// Jet-valued version; entries lose one order relative to x (xu = du x).
JMat3 tangent_frame_jets(const SurfaceJet& sj);

// Entrywise derivative jets of a frame field.
JMat3 dmat_u(const JMat3& E);
JMat3 dmat_v(const JMat3& E);

// Jet-valued Maurer-Cartan coefficients E^{-1} dE; one order below E.
JMat3 mc_u_jet(const JMat3& E);
JMat3 mc_v_jet(const JMat3& E);

// Value-level Maurer-Cartan coefficients. Throws GeometryError when the frame
// matrix is numerically singular (condition estimate above 1e12).
MCCoefficients mc_coefficients(const JMat3& E);

// Frame gauge E -> E * g with jets propagated through the product rule.
// Throws GeometryError unless |det g - 1| <= 1e-9 at the base point.
JMat3 gauge_transform(const JMat3& E, const JMat3& g);

// Constant gauge convenience.
JMat3 constant_gauge(const Mat3& g);

// Relabel (e1,e2,e3) -> (e2,e1,-e3); unimodular, reverses the sign of h12.
Mat3 relabel_gauge();

// Trace of the value part.
double trace(const Mat3& m);

} // namespace affsurf
