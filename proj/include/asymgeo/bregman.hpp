#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "config.hpp"
#include "integrand.hpp"
#include "measures.hpp"
#include "quadrature.hpp"

namespace asymgeo {

/// Nonnegative, possibly infinite divergence value.
struct DivergenceValue
{
    double value = 0.0;
    bool finite = true;

    static DivergenceValue infinite() { return {inf, false}; }
    static DivergenceValue of(double v) { return {std::max(v, 0.0), std::isfinite(v)}; }
};

/// D_KL[y, z] = sum_i y_i ln(y_i / z_i) - y_i + z_i on the positive cone,
/// with 0 ln(0 / z) = 0 and +inf whenever y charges a z-null outcome.
inline DivergenceValue kl_divergence(const Measure& y, const Measure& z)
{
    detail::require_same_space(y, z, "kl_divergence");
    double sum = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double a = y[i], b = z[i];
        if (a == 0.0) {
            sum += b;
            continue;
        }
        if (b == 0.0)
            return DivergenceValue::infinite();
        sum += std::max(0.0, a * std::log(a / b) - a + b);
    }
    return DivergenceValue::of(sum);
}

/// Dual divergence D*_KL[x, 0] = sum_i (e^{x_i} - 1 - x_i) z_i. Overflow gives +inf.
inline double dual_kl_divergence(const RandomVariable& x, const Measure& z)
{
    detail::require_same_space(x, z, "dual_kl_divergence");
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (z[i] == 0.0)
            continue;
        sum += phi_star(x[i]) * z[i];
    }
    return std::isnan(sum) ? inf : sum;
}

/// Generalized Bregman distance of a separable F = sum_i f(y_i):
/// inf over x in dF(z) of F(y) - F(z) - <x, y - z>. The infimum is taken
/// coordinate-wise at the subgradient endpoint maximizing x_i (y_i - z_i).
/// Infinite when dF(z) is empty or F(y) is infinite.
inline DivergenceValue bregman_divergence(const ConvexIntegrand& f, const Measure& y, const Measure& z)
{
    detail::require_same_space(y, z, "bregman_divergence");
    double sum = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double fy = f.value(y[i]);
        const auto sg = f.subgradient(z[i]);
        if (!std::isfinite(fy) || sg.empty())
            return DivergenceValue::infinite();
        const double d = y[i] - z[i];
        if (d == 0.0)
            continue;
        const double slope = d > 0.0 ? sg.hi : sg.lo;
        if (!std::isfinite(slope))
            return DivergenceValue::infinite();
        sum += std::max(0.0, fy - f.value(z[i]) - slope * d);
    }
    return DivergenceValue::of(sum);
}

/// ln y, the gradient of KL(y) = <ln y - 1, y>.
inline RandomVariable kl_gradient(const Measure& y)
{
    std::vector<double> g(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (!(y[i] > 0.0))
            throw DomainError("kl_gradient: weight for '" + y.space()->label(i) + "' is zero");
        g[i] = std::log(y[i]);
    }
    return {y.space(), std::move(g)};
}

/// Diagonal of the Hessian of KL at y, i.e. the Fisher metric weights 1 / y_i.
inline std::vector<double> kl_hessian_diag(const Measure& y)
{
    std::vector<double> h(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (!(y[i] > 0.0))
            throw DomainError("kl_hessian_diag: weight for '" + y.space()->label(i) + "' is zero");
        h[i] = 1.0 / y[i];
    }
    return h;
}

/// Gradient of F at y, required to exist (singleton subdifferential).
inline std::vector<double> integrand_gradient(const ConvexIntegrand& f, const Measure& y)
{
    std::vector<double> g(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        const auto sg = f.subgradient(y[i]);
        if (sg.empty() || sg.lo != sg.hi || !std::isfinite(sg.lo))
            throw DomainError("integrand_gradient: '" + f.name + "' is not differentiable at coordinate "
                              + y.space()->label(i));
        g[i] = sg.lo;
    }
    return g;
}

/// D[y,w] - D[y,z] - D[z,w] + <grad F(z) - grad F(w), z - y>; zero up to
/// rounding for every differentiable F.
inline double cosine_law_residual(const ConvexIntegrand& f, const Measure& y, const Measure& z, const Measure& w)
{
    detail::require_same_space(y, z, "cosine_law_residual");
    detail::require_same_space(z, w, "cosine_law_residual");
    const auto dyw = bregman_divergence(f, y, w);
    const auto dyz = bregman_divergence(f, y, z);
    const auto dzw = bregman_divergence(f, z, w);
    if (!dyw.finite || !dyz.finite || !dzw.finite)
        throw NotFinite("cosine_law_residual: a divergence term is infinite");
    const auto gz = integrand_gradient(f, z);
    const auto gw = integrand_gradient(f, w);
    double inner = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i)
        inner += (gz[i] - gw[i]) * (z[i] - y[i]);
    return dyw.value - dyz.value - dzw.value + inner;
}

/// Integral form of D_F[y, z]:
///   int_0^1 (1 - t) sum_i f''(z_i + t u_i) u_i^2 dt,  u = y - z.
inline QuadratureResult taylor_remainder_integral(const ConvexIntegrand& f, const Measure& y, const Measure& z,
                                                  const SolverConfig& cfg = {})
{
    detail::require_same_space(y, z, "taylor_remainder_integral");
    const std::size_t n = y.size();
    for (std::size_t i = 0; i < n; ++i) {
        // Convex domain: interior at both endpoints covers the segment.
        for (double p : {y[i], z[i]})
            if (!std::isfinite(f.value(p)) || !std::isfinite(f.second_deriv(p)))
                throw DomainError("taylor_remainder_integral: segment leaves the domain interior");
    }
    auto integrand = [&](double t) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double u = y[i] - z[i];
            if (u != 0.0)
                s += u * u * f.second_deriv(z[i] + t * u);
        }
        return (1.0 - t) * s;
    };
    return integrate_adaptive(integrand, 0.0, 1.0, cfg.quad_tol, 12);
}

/// True iff dF(y) and dF(z) share a point coordinate-wise, which for
/// separable F is exactly D_F[y, z] = 0.
inline bool zero_distance_check(const ConvexIntegrand& f, const Measure& y, const Measure& z)
{
    detail::require_same_space(y, z, "zero_distance_check");
    for (std::size_t i = 0; i < y.size(); ++i) {
        const auto a = f.subgradient(y[i]);
        const auto b = f.subgradient(z[i]);
        if (a.empty() || b.empty())
            return false;
        if (std::max(a.lo, b.lo) > std::min(a.hi, b.hi))
            return false;
    }
    return true;
}

/// Psi_q(beta x) = ln sum_i q_i e^{beta x_i}, evaluated with a max shift.
/// Only outcomes with q_i > 0 contribute.
inline double cumulant_generating(const RandomVariable& x, const Measure& q, double beta)
{
    detail::require_same_space(x, q, "cumulant_generating");
    double m = -inf;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (q[i] > 0.0)
            m = std::max(m, beta * x[i]);
    if (m == -inf)
        throw ZeroMass("cumulant_generating: reference measure is zero");
    if (!std::isfinite(m))
        return inf;
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (q[i] > 0.0)
            s += q[i] * std::exp(beta * x[i] - m);
    const double r = m + std::log(s);
    return std::isnan(r) ? inf : r;
}

} // namespace asymgeo
