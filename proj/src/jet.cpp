#include "affsurf/jet.hpp"

#include <cmath>

namespace affsurf {

namespace {

// Binomial coefficients up to 4.
constexpr double kBinom[5][5] = {
    {1, 0, 0, 0, 0},
    {1, 1, 0, 0, 0},
    {1, 2, 1, 0, 0},
    {1, 3, 3, 1, 0},
    {1, 4, 6, 4, 1},
};

int check_order_arg(int order) {
    if (order < 0 || order > Jet::kMaxOrder)
        throw ArgumentError("jet order must be in [0, 4], got " + std::to_string(order));
    return order;
}

} // namespace

Jet Jet::constant(double value, int order) {
    Jet j(check_order_arg(order), nullptr);
    j.coeff_[0] = value;
    return j;
}

Jet Jet::variable_u(double value, int order) {
    Jet j = constant(value, order);
    if (j.order_ >= 1) j.coeff_[index(1, 0)] = 1.0;
    return j;
}

Jet Jet::variable_v(double value, int order) {
    Jet j = constant(value, order);
    if (j.order_ >= 1) j.coeff_[index(0, 1)] = 1.0;
    return j;
}

double Jet::partial(int i, int j) const {
    if (i < 0 || j < 0 || i + j > order_)
        throw ArgumentError("jet partial (" + std::to_string(i) + "," + std::to_string(j) +
                            ") exceeds valid order " + std::to_string(order_));
    return coeff_[index(i, j)];
}

Jet Jet::du() const {
    if (order_ < 1) throw ArgumentError("cannot differentiate an order-0 jet");
    Jet r(order_ - 1, nullptr);
    for (int i = 0; i + 1 <= order_; ++i)
        for (int j = 0; i + 1 + j <= order_; ++j)
            r.coeff_[index(i, j)] = coeff_[index(i + 1, j)];
    return r;
}

Jet Jet::dv() const {
    if (order_ < 1) throw ArgumentError("cannot differentiate an order-0 jet");
    Jet r(order_ - 1, nullptr);
    for (int i = 0; i <= order_ - 1; ++i)
        for (int j = 0; i + j + 1 <= order_; ++j)
            r.coeff_[index(i, j)] = coeff_[index(i, j + 1)];
    return r;
}

Jet Jet::operator-() const {
    Jet r = *this;
    for (double& c : r.coeff_) c = -c;
    return r;
}

Jet operator+(const Jet& a, const Jet& b) {
    Jet r(std::min(a.order_, b.order_), nullptr);
    for (int i = 0; i <= r.order_; ++i)
        for (int j = 0; i + j <= r.order_; ++j) {
            const int k = Jet::index(i, j);
            r.coeff_[k] = a.coeff_[k] + b.coeff_[k];
        }
    return r;
}

Jet operator-(const Jet& a, const Jet& b) {
    Jet r(std::min(a.order_, b.order_), nullptr);
    for (int i = 0; i <= r.order_; ++i)
        for (int j = 0; i + j <= r.order_; ++j) {
            const int k = Jet::index(i, j);
            r.coeff_[k] = a.coeff_[k] - b.coeff_[k];
        }
    return r;
}

// Leibniz rule on raw partials:
// (fg)^(i,j) = sum_{p<=i, q<=j} C(i,p) C(j,q) f^(p,q) g^(i-p, j-q).
Jet operator*(const Jet& a, const Jet& b) {
    Jet r(std::min(a.order_, b.order_), nullptr);
    for (int i = 0; i <= r.order_; ++i)
        for (int j = 0; i + j <= r.order_; ++j) {
            double s = 0.0;
            for (int p = 0; p <= i; ++p)
                for (int q = 0; q <= j; ++q)
                    s += kBinom[i][p] * kBinom[j][q] *
                         a.coeff_[Jet::index(p, q)] * b.coeff_[Jet::index(i - p, j - q)];
            r.coeff_[Jet::index(i, j)] = s;
        }
    return r;
}

Jet operator/(const Jet& a, const Jet& b) {
    const double b0 = b.value();
    if (b0 == 0.0) throw DomainError("division by zero");
    std::array<double, Jet::kMaxOrder + 1> d{};
    // Derivatives of t -> 1/t at b0: (-1)^k k! / b0^(k+1).
    double p = 1.0 / b0;
    double fact = 1.0;
    for (int k = 0; k <= Jet::kMaxOrder; ++k) {
        d[k] = (k % 2 == 0 ? fact * p : -fact * p);
        p /= b0;
        fact *= (k + 1);
    }
    return a * b.compose(d);
}

Jet Jet::compose(const std::array<double, kMaxOrder + 1>& derivs) const {
    // Truncated Taylor composition: with h = g - g(0,0) (zero constant term),
    // f(g) = sum_k f^(k)(g0) / k! * h^k, exact in the truncated algebra.
    Jet h = *this;
    h.coeff_[0] = 0.0;
    Jet acc = Jet::constant(derivs[0], order_);
    Jet hp = Jet::constant(1.0, order_);
    double fact = 1.0;
    for (int k = 1; k <= order_; ++k) {
        hp = hp * h;
        fact *= k;
        acc = acc + hp * Jet::constant(derivs[k] / fact, order_);
    }
    return acc;
}

Jet sin(const Jet& g) {
    const double s = std::sin(g.value()), c = std::cos(g.value());
    return g.compose({s, c, -s, -c, s});
}

Jet cos(const Jet& g) {
    const double s = std::sin(g.value()), c = std::cos(g.value());
    return g.compose({c, -s, -c, s, c});
}

Jet sinh(const Jet& g) {
    const double s = std::sinh(g.value()), c = std::cosh(g.value());
    return g.compose({s, c, s, c, s});
}

Jet cosh(const Jet& g) {
    const double s = std::sinh(g.value()), c = std::cosh(g.value());
    return g.compose({c, s, c, s, c});
}

Jet exp(const Jet& g) {
    const double e = std::exp(g.value());
    return g.compose({e, e, e, e, e});
}

Jet log(const Jet& g) {
    const double x = g.value();
    if (!(x > 0.0)) throw DomainError("log of non-positive value");
    return g.compose({std::log(x), 1.0 / x, -1.0 / (x * x), 2.0 / (x * x * x),
                      -6.0 / (x * x * x * x)});
}

Jet sqrt(const Jet& g) {
    const double x = g.value();
    if (x < 0.0) throw DomainError("sqrt of negative value");
    if (x == 0.0) throw DomainError("sqrt not differentiable at zero");
    const double r = std::sqrt(x);
    return g.compose({r, 0.5 / r, -0.25 / (x * r), 0.375 / (x * x * r),
                      -0.9375 / (x * x * x * r)});
}

Jet pow_int(const Jet& g, int n) {
    if (n < 0) return Jet(1.0) / pow_int(g, -n);
    Jet acc = Jet::constant(1.0, g.order());
    Jet base = g;
    unsigned e = static_cast<unsigned>(n);
    while (e) {
        if (e & 1u) acc = acc * base;
        e >>= 1u;
        if (e) base = base * base;
    }
    return acc;
}

Jet pow_real(const Jet& g, double alpha) {
    const double x = g.value();
    if (!(x > 0.0)) throw DomainError("real power of non-positive base");
    std::array<double, Jet::kMaxOrder + 1> d{};
    double coef = std::pow(x, alpha);
    double a = alpha;
    d[0] = coef;
    for (int k = 1; k <= Jet::kMaxOrder; ++k) {
        coef *= a / x;
        d[k] = coef;
        a -= 1.0;
        // coef now holds alpha (alpha-1) ... (alpha-k+1) x^(alpha-k)
    }
    return g.compose(d);
}

} // namespace affsurf
