#pragma once

#include <array>
#include <cmath>

#include "affsurf/jet.hpp"

namespace affsurf {

// Minimal fixed-size vector/matrix algebra over a scalar type T, instantiated
// with double (values) and Jet (value + partials). Matrices are stored by
// rows; columns hold frame vectors.

template <class T>
struct V3 {
    T x{}, y{}, z{};

    T& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
    const T& operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

    friend V3 operator+(const V3& a, const V3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend V3 operator-(const V3& a, const V3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend V3 operator*(const T& s, const V3& a) { return {s * a.x, s * a.y, s * a.z}; }
    friend V3 operator*(const V3& a, const T& s) { return s * a; }
    friend V3 operator/(const V3& a, const T& s) { return {a.x / s, a.y / s, a.z / s}; }
    V3 operator-() const { return {-x, -y, -z}; }
};

template <class T>
T dot(const V3<T>& a, const V3<T>& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

template <class T>
V3<T> cross(const V3<T>& a, const V3<T>& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

template <class T>
struct M3 {
    // a[r][c]: row r, column c.
    std::array<std::array<T, 3>, 3> a{};

    static M3 identity() {
        M3 m;
        m.a[0][0] = T(1.0); m.a[1][1] = T(1.0); m.a[2][2] = T(1.0);
        return m;
    }

    static M3 from_cols(const V3<T>& c0, const V3<T>& c1, const V3<T>& c2) {
        M3 m;
        for (int r = 0; r < 3; ++r) { m.a[r][0] = c0[r]; m.a[r][1] = c1[r]; m.a[r][2] = c2[r]; }
        return m;
    }

    static M3 diagonal(const T& d0, const T& d1, const T& d2) {
        M3 m;
        m.a[0][0] = d0; m.a[1][1] = d1; m.a[2][2] = d2;
        return m;
    }

    V3<T> col(int c) const { return {a[0][c], a[1][c], a[2][c]}; }
    void set_col(int c, const V3<T>& v) { a[0][c] = v.x; a[1][c] = v.y; a[2][c] = v.z; }

    T& operator()(int r, int c) { return a[r][c]; }
    const T& operator()(int r, int c) const { return a[r][c]; }

    friend M3 operator+(const M3& x, const M3& y) {
        M3 m;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) m.a[r][c] = x.a[r][c] + y.a[r][c];
        return m;
    }
    friend M3 operator-(const M3& x, const M3& y) {
        M3 m;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) m.a[r][c] = x.a[r][c] - y.a[r][c];
        return m;
    }
    friend M3 operator*(const M3& x, const M3& y) {
        M3 m;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c)
                m.a[r][c] = x.a[r][0] * y.a[0][c] + x.a[r][1] * y.a[1][c] + x.a[r][2] * y.a[2][c];
        return m;
    }
    friend V3<T> operator*(const M3& x, const V3<T>& v) {
        return {x.a[0][0] * v.x + x.a[0][1] * v.y + x.a[0][2] * v.z,
                x.a[1][0] * v.x + x.a[1][1] * v.y + x.a[1][2] * v.z,
                x.a[2][0] * v.x + x.a[2][1] * v.y + x.a[2][2] * v.z};
    }
    friend M3 operator*(const T& s, const M3& x) {
        M3 m;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) m.a[r][c] = s * x.a[r][c];
        return m;
    }
};

template <class T>
T det(const M3<T>& m) {
    return m.a[0][0] * (m.a[1][1] * m.a[2][2] - m.a[1][2] * m.a[2][1]) -
           m.a[0][1] * (m.a[1][0] * m.a[2][2] - m.a[1][2] * m.a[2][0]) +
           m.a[0][2] * (m.a[1][0] * m.a[2][1] - m.a[1][1] * m.a[2][0]);
}

// det [a b c] of three column vectors.
template <class T>
T det3(const V3<T>& a, const V3<T>& b, const V3<T>& c) {
    return dot(cross(a, b), c);
}

template <class T>
M3<T> adjugate(const M3<T>& m) {
    M3<T> r;
    r.a[0][0] = m.a[1][1] * m.a[2][2] - m.a[1][2] * m.a[2][1];
    r.a[0][1] = m.a[0][2] * m.a[2][1] - m.a[0][1] * m.a[2][2];
    r.a[0][2] = m.a[0][1] * m.a[1][2] - m.a[0][2] * m.a[1][1];
    r.a[1][0] = m.a[1][2] * m.a[2][0] - m.a[1][0] * m.a[2][2];
    r.a[1][1] = m.a[0][0] * m.a[2][2] - m.a[0][2] * m.a[2][0];
    r.a[1][2] = m.a[0][2] * m.a[1][0] - m.a[0][0] * m.a[1][2];
    r.a[2][0] = m.a[1][0] * m.a[2][1] - m.a[1][1] * m.a[2][0];
    r.a[2][1] = m.a[0][1] * m.a[2][0] - m.a[0][0] * m.a[2][1];
    r.a[2][2] = m.a[0][0] * m.a[1][1] - m.a[0][1] * m.a[1][0];
    return r;
}

// Direct adjugate inverse; callers guard the determinant.
template <class T>
M3<T> inverse(const M3<T>& m) {
    T d = det(m);
    M3<T> adj = adjugate(m);
    M3<T> r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r.a[i][j] = adj.a[i][j] / d;
    return r;
}

using Vec3 = V3<double>;
using Mat3 = M3<double>;
using JVec3 = V3<Jet>;
using JMat3 = M3<Jet>;

inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

inline double frobenius(const Mat3& m) {
    double s = 0.0;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) s += m.a[r][c] * m.a[r][c];
    return std::sqrt(s);
}

inline bool all_finite(const Vec3& v) {
    return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}

// Value parts of a jet-valued vector/matrix.
inline Vec3 values(const JVec3& v) { return {v.x.value(), v.y.value(), v.z.value()}; }
inline Mat3 values(const JMat3& m) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r.a[i][j] = m.a[i][j].value();
    return r;
}

} // namespace affsurf
