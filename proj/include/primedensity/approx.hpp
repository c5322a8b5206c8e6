#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <string_view>

#include <Eigen/Core>

#include "primedensity/errors.hpp"

namespace primedensity {

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
inline constexpr double kLegendreB = 1.80366;

// Coefficients of the correction model  fhat(y) = a / y + b * exp(c * y) + d,  y = log10(x).
template <typename Scalar>
struct BasicFitParams {
    Scalar a{};
    Scalar b{};
    Scalar c{};
    Scalar d{};

    using Vector = Eigen::Matrix<Scalar, 4, 1>;

    static BasicFitParams paper() {
        return {Scalar(0.7013), Scalar(-4.964), Scalar(-0.9677), Scalar(0.98)};
    }
    static BasicFitParams from_vector(const Vector& v) { return {v(0), v(1), v(2), v(3)}; }
    Vector vector() const { return Vector(a, b, c, d); }

    template <typename Other>
    BasicFitParams<Other> cast() const {
        return {Other(a), Other(b), Other(c), Other(d)};
    }

    friend bool operator==(const BasicFitParams&, const BasicFitParams&) = default;
};

using FitParams = BasicFitParams<double>;

// x / ln x
template <typename Scalar>
Scalar gauss_ratio(Scalar x) {
    using std::log;
    if (!(x > Scalar(1))) throw DomainError("gauss_ratio: x must be > 1");
    return x / log(x);
}

// x / (ln x - B)
template <typename Scalar>
Scalar legendre(Scalar x, Scalar B = Scalar(kLegendreB)) {
    using std::log;
    if (!(x > Scalar(0))) throw DomainError("legendre: x must be > 0");
    const Scalar denom = log(x) - B;
    if (denom == Scalar(0)) throw PoleError("legendre: ln x equals B");
    return x / denom;
}

template <typename Scalar>
Scalar f_hat(Scalar y, const BasicFitParams<Scalar>& p) {
    using std::exp;
    if (!(y > Scalar(0))) throw DomainError("f_hat: y must be > 0");
    return p.a / y + p.b * exp(p.c * y) + p.d;
}

// Partial derivatives of f_hat with respect to (a, b, c, d).
template <typename Scalar>
Eigen::Matrix<Scalar, 4, 1> f_hat_gradient(Scalar y, const BasicFitParams<Scalar>& p) {
    using std::exp;
    if (!(y > Scalar(0))) throw DomainError("f_hat_gradient: y must be > 0");
    const Scalar e = exp(p.c * y);
    return {Scalar(1) / y, e, p.b * y * e, Scalar(1)};
}

// x / (ln x - fhat(log10 x))
template <typename Scalar>
Scalar conjecture_pi(Scalar x, const BasicFitParams<Scalar>& p = BasicFitParams<Scalar>::paper()) {
    using std::log;
    using std::log10;
    if (!(x > Scalar(1))) throw DomainError("conjecture_pi: x must be > 1");
    const Scalar denom = log(x) - f_hat(log10(x), p);
    if (!(denom > Scalar(0))) throw PoleError("conjecture_pi: ln x - fhat(log10 x) <= 0");
    return x / denom;
}

// Exponential integral Ei(u) for u > 0, so that li(x) = Ei(ln x).
double exponential_integral_ei(double u);

// Principal-value logarithmic integral li(x) = PV int_0^x dt / ln t, x > 1.
// Ramanujan's series below kLiAsymptoticLog = ln x, the asymptotic expansion above.
double li(double x);
inline constexpr double kLiAsymptoticLog = 41.0;

// The two branches of li, exposed for crossover validation.
double li_ramanujan(double x);
double li_asymptotic(double x);

// Riemann zeta at real s > 1 by Euler-Maclaurin summation.
double zeta(double s);

// Truncated Moebius sum  sum_{n <= n_max} mu(n)/n li(x^{1/n}).
double riemann_r_mobius(double x, int n_max);

// Moebius sum with the default head n <= ceil(log2 x) + 2 and the remaining terms summed
// in closed form through sum mu(n)/n = 0, sum mu(n) ln n / n = -1 and 1/zeta(2) = 6/pi^2.
double riemann_r_mobius(double x);

int default_mobius_terms(double x);

// Gram series  R(x) = 1 + sum_k (ln x)^k / (k k! zeta(k+1)).
double riemann_r_gram(double x);

enum class ApproxTag { GaussRatio, Legendre, LogIntegral, RiemannR, ConjectureFit };

std::string_view to_string(ApproxTag tag);
std::optional<ApproxTag> parse_approx_tag(std::string_view name);

// One of the five estimators compared in the tables, with its parameters bound.
struct ApproxMethod {
    ApproxTag tag = ApproxTag::GaussRatio;
    double legendre_b = kLegendreB;
    FitParams fit = FitParams::paper();

    double operator()(double x) const;
};

}  // namespace primedensity
