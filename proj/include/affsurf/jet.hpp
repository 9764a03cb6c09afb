#pragma once

#include <array>
#include <cstddef>

#include "affsurf/errors.hpp"

namespace affsurf {

// Truncated Taylor jet of a scalar function of (u, v), carrying raw mixed
// partial derivatives d^{i+j} f / du^i dv^j for all i + j <= order, order <= 4.
//
// `order()` is the highest total degree whose coefficients are valid; it
// shrinks by one under du()/dv() and propagates as the minimum through
// arithmetic. Reading a partial beyond the valid order throws.
class Jet {
public:
    static constexpr int kMaxOrder = 4;
    static constexpr int kCoeffCount = 15; // pairs (i,j) with i + j <= 4

    // Zero constant, valid to full order.
    Jet() : Jet(0.0) {}
    // Implicit lift of a constant.
    Jet(double value) : order_(kMaxOrder) { coeff_.fill(0.0); coeff_[0] = value; }

    static Jet constant(double value, int order = kMaxOrder);
    static Jet variable_u(double value, int order = kMaxOrder);
    static Jet variable_v(double value, int order = kMaxOrder);

    int order() const noexcept { return order_; }
    double value() const noexcept { return coeff_[0]; }

    // Checked access to the raw partial d^{i+j} f / du^i dv^j.
    double partial(int i, int j) const;

    // Jet of df/du (resp. df/dv); valid order drops by one.
    Jet du() const;
    Jet dv() const;

    Jet operator-() const;
    friend Jet operator+(const Jet& a, const Jet& b);
    friend Jet operator-(const Jet& a, const Jet& b);
    friend Jet operator*(const Jet& a, const Jet& b);
    friend Jet operator/(const Jet& a, const Jet& b);
    Jet& operator+=(const Jet& o) { *this = *this + o; return *this; }
    Jet& operator-=(const Jet& o) { *this = *this - o; return *this; }
    Jet& operator*=(const Jet& o) { *this = *this * o; return *this; }
    Jet& operator/=(const Jet& o) { *this = *this / o; return *this; }

    // Composition with a univariate function given by its value and
    // derivatives [f(g0), f'(g0), ..., f^(order)(g0)] at g0 = value().
    Jet compose(const std::array<double, kMaxOrder + 1>& derivs) const;

    // Unchecked coefficient access (all 15 slots), for low-level code.
    double raw(int idx) const noexcept { return coeff_[idx]; }
    double& raw(int idx) noexcept { return coeff_[idx]; }

    static int index(int i, int j) noexcept { return 5 * i - i * (i - 1) / 2 + j; }

private:
    explicit Jet(int order, std::nullptr_t) : order_(order) { coeff_.fill(0.0); }

    std::array<double, kCoeffCount> coeff_{};
    int order_ = kMaxOrder;
};

Jet sin(const Jet& g);
Jet cos(const Jet& g);
Jet sinh(const Jet& g);
Jet cosh(const Jet& g);
Jet exp(const Jet& g);
Jet log(const Jet& g);
Jet sqrt(const Jet& g);
// Integer power by repeated multiplication; negative exponents via reciprocal.
Jet pow_int(const Jet& g, int n);
// Real power, base must be positive (used by frame gauges: h^(±1/4), h^(1/2)).
Jet pow_real(const Jet& g, double alpha);

inline Jet operator+(const Jet& a, double b) { return a + Jet(b); }
inline Jet operator+(double a, const Jet& b) { return Jet(a) + b; }
inline Jet operator-(const Jet& a, double b) { return a - Jet(b); }
inline Jet operator-(double a, const Jet& b) { return Jet(a) - b; }
inline Jet operator*(const Jet& a, double b) { return a * Jet(b); }
inline Jet operator*(double a, const Jet& b) { return Jet(a) * b; }
inline Jet operator/(const Jet& a, double b) { return a / Jet(b); }
inline Jet operator/(double a, const Jet& b) { return Jet(a) / b; }

} // namespace affsurf
