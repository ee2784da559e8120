#pragma once

#include <cmath>
#include <functional>
#include <string>

#include "config.hpp"

namespace asymgeo {

/// Closed convex scalar function f : R -> R u {+inf} together with its
/// one-sided derivatives, second derivative and Fenchel conjugate. Separable
/// functionals F(y) = sum_i f(y_i) are built from it.
///
/// Outside the effective domain `value` returns +inf. At points where the
/// subdifferential is empty (domain boundary with an infinite slope, or
/// outside the domain) `right_deriv` returns -inf or `left_deriv` +inf.
struct ConvexIntegrand
{
    using Fn = std::function<double(double)>;

    std::string name;
    Fn value;
    Fn left_deriv;
    Fn right_deriv;
    Fn second_deriv;
    Fn conjugate;
    Fn conjugate_deriv;
    double domain_lo = -inf;
    double domain_hi = inf;

    bool in_domain(double t) const { return std::isfinite(value(t)); }

    /// Subgradient interval [lo, hi]; empty when lo > hi or an endpoint is an
    /// infinity that closes the interval off.
    struct Interval
    {
        double lo;
        double hi;
        bool empty() const { return !(lo <= hi) || lo == inf || hi == -inf; }
    };

    Interval subgradient(double t) const
    {
        if (!in_domain(t))
            return {inf, -inf};
        return {left_deriv(t), right_deriv(t)};
    }
};

/// f(t) = t ln t - t on t >= 0 with 0 ln 0 = 0; +inf for t < 0.
inline ConvexIntegrand kl_integrand()
{
    ConvexIntegrand f;
    f.name = "kl";
    f.domain_lo = 0.0;
    f.value = [](double t) {
        if (t < 0.0)
            return inf;
        if (t == 0.0)
            return 0.0;
        return t * std::log(t) - t;
    };
    // At t = 0 the slope is -inf on the right: the subdifferential is empty.
    f.left_deriv = [](double t) { return t > 0.0 ? std::log(t) : (t == 0.0 ? -inf : inf); };
    f.right_deriv = [](double t) { return t > 0.0 ? std::log(t) : -inf; };
    f.second_deriv = [](double t) { return t > 0.0 ? 1.0 / t : inf; };
    f.conjugate = [](double s) { return std::exp(s); };
    f.conjugate_deriv = [](double s) { return std::exp(s); };
    return f;
}

/// f(t) = t^2 / 2, self-conjugate.
inline ConvexIntegrand quadratic_integrand()
{
    ConvexIntegrand f;
    f.name = "quadratic";
    f.value = [](double t) { return 0.5 * t * t; };
    f.left_deriv = [](double t) { return t; };
    f.right_deriv = [](double t) { return t; };
    f.second_deriv = [](double) { return 1.0; };
    f.conjugate = [](double s) { return 0.5 * s * s; };
    f.conjugate_deriv = [](double s) { return s; };
    return f;
}

/// f(t) = |t|. Its conjugate is the indicator of [-1, 1], which is convex but
/// not strictly convex, so D_F fails to separate points.
inline ConvexIntegrand abs_integrand()
{
    ConvexIntegrand f;
    f.name = "abs";
    f.value = [](double t) { return std::abs(t); };
    f.left_deriv = [](double t) { return t > 0.0 ? 1.0 : -1.0; };
    f.right_deriv = [](double t) { return t < 0.0 ? -1.0 : 1.0; };
    f.second_deriv = [](double) { return 0.0; };
    f.conjugate = [](double s) { return std::abs(s) <= 1.0 ? 0.0 : inf; };
    f.conjugate_deriv = [](double s) { return std::abs(s) < 1.0 ? 0.0 : (s > 0.0 ? inf : -inf); };
    return f;
}

/// phi(u) = (1+u) ln(1+u) - u on u >= -1, phi(-1) = 1, +inf below.
inline double phi(double u)
{
    if (u < -1.0)
        return inf;
    if (u == -1.0)
        return 1.0;
    if (std::isinf(u))
        return inf;
    return (1.0 + u) * std::log1p(u) - u;
}

/// phi*(x) = e^x - 1 - x.
inline double phi_star(double x)
{
    if (x == inf)
        return inf;
    if (x == -inf)
        return inf;
    return std::expm1(x) - x;
}

inline ConvexIntegrand phi_integrand()
{
    ConvexIntegrand f;
    f.name = "phi";
    f.domain_lo = -1.0;
    f.value = [](double u) { return phi(u); };
    f.left_deriv = [](double u) { return u > -1.0 ? std::log1p(u) : (u == -1.0 ? -inf : inf); };
    f.right_deriv = [](double u) { return u > -1.0 ? std::log1p(u) : -inf; };
    f.second_deriv = [](double u) { return u > -1.0 ? 1.0 / (1.0 + u) : inf; };
    f.conjugate = [](double x) { return phi_star(x); };
    f.conjugate_deriv = [](double x) { return std::expm1(x); };
    return f;
}

inline ConvexIntegrand phi_star_integrand()
{
    ConvexIntegrand f;
    f.name = "phistar";
    f.value = [](double x) { return phi_star(x); };
    f.left_deriv = [](double x) { return std::expm1(x); };
    f.right_deriv = [](double x) { return std::expm1(x); };
    f.second_deriv = [](double x) { return std::exp(x); };
    f.conjugate = [](double u) { return phi(u); };
    f.conjugate_deriv = [](double u) { return u > -1.0 ? std::log1p(u) : -inf; };
    return f;
}

inline ConvexIntegrand integrand_by_name(const std::string& name)
{
    if (name == "kl")
        return kl_integrand();
    if (name == "quadratic")
        return quadratic_integrand();
    if (name == "abs")
        return abs_integrand();
    if (name == "phi")
        return phi_integrand();
    if (name == "phistar")
        return phi_star_integrand();
    throw DomainError("unknown integrand '" + name + "'");
}

} // namespace asymgeo
