#include "affsurf/frames.hpp"

namespace affsurf {

UnimodularFrame complete_unimodular(const Vec3& xu, const Vec3& xv) {
    const Vec3 n = cross(xu, xv);
    const double n2 = dot(n, n);
    if (std::sqrt(n2) < 1e-12)
        throw GeometryError("degenerate tangent plane: |xu x xv| < 1e-12");
    return {xu, xv, n / n2};
}

JMat3 tangent_frame_jets(const SurfaceJet& sj) {
    const JVec3 xu{sj.x.x.du(), sj.x.y.du(), sj.x.z.du()};
    const JVec3 xv{sj.x.x.dv(), sj.x.y.dv(), sj.x.z.dv()};
    const Vec3 nval = cross(values(xu), values(xv));
    if (norm(nval) < 1e-12)
        throw GeometryError("degenerate tangent plane: |xu x xv| < 1e-12");
    const JVec3 n = cross(xu, xv);
    const JVec3 e3 = n / dot(n, n);
    return JMat3::from_cols(xu, xv, e3);
}

JMat3 dmat_u(const JMat3& E) {
    JMat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r(i, j) = E(i, j).du();
    return r;
}

JMat3 dmat_v(const JMat3& E) {
    JMat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r(i, j) = E(i, j).dv();
    return r;
}

namespace {

void check_invertible(const JMat3& E) {
    const Mat3 val = values(E);
    const double d = det(val);
    if (d == 0.0) throw GeometryError("singular frame matrix");
    const Mat3 inv_val = inverse(val);
    if (frobenius(val) * frobenius(inv_val) > 1e12)
        throw GeometryError("frame matrix condition number above 1e12");
}

} // namespace

JMat3 mc_u_jet(const JMat3& E) {
    return inverse(E) * dmat_u(E);
}

JMat3 mc_v_jet(const JMat3& E) {
    return inverse(E) * dmat_v(E);
}

MCCoefficients mc_coefficients(const JMat3& E) {
    check_invertible(E);
    return {values(mc_u_jet(E)), values(mc_v_jet(E))};
}

JMat3 gauge_transform(const JMat3& E, const JMat3& g) {
    const double d = det(values(g));
    if (std::abs(d - 1.0) > 1e-9)
        throw GeometryError("gauge is not unimodular: |det g - 1| = " +
                            std::to_string(std::abs(d - 1.0)));
    return E * g;
}

JMat3 constant_gauge(const Mat3& g) {
    JMat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r(i, j) = Jet(g(i, j));
    return r;
}

Mat3 relabel_gauge() {
    Mat3 p;
    p(0, 1) = 1.0;
    p(1, 0) = 1.0;
    p(2, 2) = -1.0;
    return p;
}

double trace(const Mat3& m) { return m(0, 0) + m(1, 1) + m(2, 2); }

} // namespace affsurf
