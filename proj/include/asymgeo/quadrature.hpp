#pragma once

#include <array>
#include <cmath>
#include <numbers>

namespace asymgeo {

/// Gauss-Legendre rule on [-1, 1] with N nodes, computed once by Newton
/// iteration on P_N.
template <int N>
struct GaussLegendre
{
    std::array<double, N> nodes{};
    std::array<double, N> weights{};

    GaussLegendre()
    {
        for (int i = 0; i < N; ++i) {
            double x = std::cos(std::numbers::pi * (i + 0.75) / (N + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= N; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = N * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-16)
                    break;
            }
            nodes[i] = x;
            weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
    }

    static const GaussLegendre& instance()
    {
        static const GaussLegendre rule;
        return rule;
    }

    template <class F>
    double integrate(F&& f, double a, double b) const
    {
        const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
        double s = 0.0;
        for (int i = 0; i < N; ++i)
            s += weights[i] * f(mid + half * nodes[i]);
        return s * half;
    }
};

struct QuadratureResult
{
    double value = 0.0;
    double error_estimate = 0.0;
    bool converged = true;
};

namespace detail {

template <class F>
double adaptive_panel(F& f, double a, double b, double whole, double tol, int depth, int max_depth,
                      QuadratureResult& res)
{
    const auto& rule = GaussLegendre<15>::instance();
    const double m = 0.5 * (a + b);
    const double left = rule.integrate(f, a, m);
    const double right = rule.integrate(f, m, b);
    const double err = std::abs(left + right - whole);
    if (err <= tol || depth >= max_depth) {
        if (err > tol)
            res.converged = false;
        res.error_estimate += err;
        return left + right;
    }
    return adaptive_panel(f, a, m, left, 0.5 * tol, depth + 1, max_depth, res)
         + adaptive_panel(f, m, b, right, 0.5 * tol, depth + 1, max_depth, res);
}

} // namespace detail

/// Adaptive 15-point Gauss-Legendre with panel bisection. Panels that still
/// miss the tolerance at max_depth are accepted as a composite rule and the
/// result is marked unconverged.
template <class F>
QuadratureResult integrate_adaptive(F&& f, double a, double b, double abs_tol = 1e-9, int max_depth = 12)
{
    QuadratureResult res;
    const double whole = GaussLegendre<15>::instance().integrate(f, a, b);
    res.value = detail::adaptive_panel(f, a, b, whole, abs_tol, 0, max_depth, res);
    return res;
}

} // namespace asymgeo
