#pragma once

#include <cmath>
#include <string>

#include "config.hpp"

#if !defined(NDEBUG) && !defined(ASYMGEO_CHECK_MONOTONE)
#define ASYMGEO_CHECK_MONOTONE 1
#endif

namespace asymgeo {

struct Bracket
{
    double lo;
    double hi;
};

namespace detail {

// Number of halvings needed to walk any double interval down to adjacent
// representable values.
inline constexpr int kMaxHalvings = 2200;

} // namespace detail

/// Checks that f is nondecreasing on [lo, hi] at `samples` equispaced points.
/// Infinite values count as larger than every finite value.
template <class F>
bool sampled_nondecreasing(F&& f, double lo, double hi, int samples = 100, double slack = 1e-12)
{
    double prev = f(lo);
    for (int k = 1; k <= samples; ++k) {
        const double t = lo + (hi - lo) * k / samples;
        const double v = f(t);
        if (std::isnan(v))
            return false;
        if (v < prev - slack * std::max(1.0, std::abs(prev)))
            return false;
        prev = v;
    }
    return true;
}

/// Bisection for a nondecreasing f with f(lo) <= target <= f(hi). Runs until
/// the interval collapses to adjacent doubles; the result is the endpoint with
/// the smaller residual.
template <class F>
double bisect_increasing(F&& f, double target, Bracket b)
{
#ifdef ASYMGEO_CHECK_MONOTONE
    if (std::isfinite(b.hi) && !sampled_nondecreasing(f, b.lo, b.hi))
        throw DomainError("bisect_increasing: root function is not monotone on its bracket");
#endif
    double lo = b.lo, hi = b.hi;
    double flo = f(lo), fhi = f(hi);
    for (int it = 0; it < detail::kMaxHalvings; ++it) {
        const double mid = lo + 0.5 * (hi - lo);
        if (mid <= lo || mid >= hi)
            break;
        const double fm = f(mid);
        if (fm < target) {
            lo = mid;
            flo = fm;
        }
        else {
            hi = mid;
            fhi = fm;
        }
    }
    return std::abs(flo - target) <= std::abs(fhi - target) ? lo : hi;
}

/// Grows [lo, guess] geometrically until f(hi) >= target. f must be
/// nondecreasing with f(lo) <= target. `cap`, when finite, bounds the search:
/// if f(cap) < target the returned bracket has hi == cap and `reached` false.
template <class F>
Bracket bracket_increasing(F&& f, double target, double lo, double guess, const SolverConfig& cfg,
                           bool* reached = nullptr, double cap = inf)
{
    double hi = guess;
    if (std::isfinite(cap) && hi > cap)
        hi = cap;
    for (int it = 0; it < cfg.max_iter; ++it) {
        const double v = f(hi);
        if (!(v < target)) {
            if (reached)
                *reached = true;
            return {lo, hi};
        }
        if (hi >= cap) {
            if (reached)
                *reached = false;
            return {lo, hi};
        }
        lo = hi;
        hi = hi * cfg.bracket_growth;
        if (std::isfinite(cap) && hi > cap)
            hi = cap;
    }
    throw BracketFailure("bracket_increasing: target " + std::to_string(target) + " not reached after "
                         + std::to_string(cfg.max_iter) + " growth steps");
}

/// Solves f(t) = target for t >= 0 with f nondecreasing and f(0) <= target.
template <class F>
double solve_increasing(F&& f, double target, const SolverConfig& cfg)
{
    auto b = bracket_increasing(f, target, 0.0, 1.0, cfg);
    return bisect_increasing(f, target, b);
}

} // namespace asymgeo
