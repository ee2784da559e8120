#pragma once

// Asymmetric norms induced by the KL divergence and its dual around a fixed
// base measure z, their quasimetrics, the Luxemburg norms of the four
// symmetrized Young functions, and finite-dimensional separation probes.
//
// Every norm here is a gauge (or support function) of a unit sublevel set
// "D <= 1" and is computed by a monotone scalar root find: geometric bracket
// growth from 1, then bisection.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "bregman.hpp"
#include "config.hpp"
#include "measures.hpp"
#include "roots.hpp"

namespace asymgeo {

struct NormContext
{
    Measure base;
    SolverConfig cfg;

    NormContext(Measure z, SolverConfig c = {})
        : base(std::move(z)), cfg(c)
    {
        cfg.validate();
        if (!(base.total_mass() > 0.0))
            throw ZeroMass("NormContext: base measure has no positive weight");
    }

    std::size_t size() const { return base.size(); }
};

enum class NormStatus {
    ok,
    degenerate,  ///< input lives on z-null outcomes only: value 0 (T1 failure witness)
    capped,      ///< primal unit ball truncated by the positive cone
    unreachable, ///< sublevel set contains no positive multiple: value +inf
};

struct NormResult
{
    double value = 0.0;
    NormStatus status = NormStatus::ok;
};

enum class LuxemburgVariant { phi_abs, phi_neg_abs, phistar_abs, phistar_neg_abs };

inline const char* to_string(LuxemburgVariant v)
{
    switch (v) {
    case LuxemburgVariant::phi_abs: return "phi_abs";
    case LuxemburgVariant::phi_neg_abs: return "phi_neg_abs";
    case LuxemburgVariant::phistar_abs: return "phistar_abs";
    case LuxemburgVariant::phistar_neg_abs: return "phistar_neg_abs";
    }
    return "?";
}

inline LuxemburgVariant luxemburg_variant_from(const std::string& s)
{
    for (auto v : {LuxemburgVariant::phi_abs, LuxemburgVariant::phi_neg_abs, LuxemburgVariant::phistar_abs,
                   LuxemburgVariant::phistar_neg_abs})
        if (s == to_string(v))
            return v;
    throw DomainError("unknown Luxemburg variant '" + s + "'");
}

/// Young function of a Luxemburg variant, evaluated at s.
inline double young(LuxemburgVariant v, double s)
{
    const double a = std::abs(s);
    switch (v) {
    case LuxemburgVariant::phi_abs: return phi(a);
    case LuxemburgVariant::phi_neg_abs: return phi(-a);
    case LuxemburgVariant::phistar_abs: return phi_star(a);
    case LuxemburgVariant::phistar_neg_abs: return phi_star(-a);
    }
    return inf;
}

namespace detail {

inline void require_size(std::span<const double> v, const NormContext& ctx, const char* op)
{
    if (v.size() != ctx.size())
        throw DimensionMismatch(std::string(op) + ": vector size does not match the base measure");
}

/// True when v vanishes on every outcome charged by z.
inline bool invisible_to(std::span<const double> v, const Measure& z)
{
    for (std::size_t i = 0; i < v.size(); ++i)
        if (z[i] > 0.0 && v[i] != 0.0)
            return false;
    return true;
}

inline bool all_zero(std::span<const double> v)
{
    return std::all_of(v.begin(), v.end(), [](double e) { return e == 0.0; });
}

/// Gauge of {v : sum_i z_i Y(v_i) <= 1} for an increasing-in-|.| or
/// asymmetric convex Y with Y(0) = 0: inf{a > 0 : sum z_i Y(v_i / a) <= 1},
/// solved as 1 / t* for the increasing map t -> sum z_i Y(t v_i).
template <class Young>
NormResult orlicz_gauge(std::span<const double> v, const NormContext& ctx, Young&& y)
{
    const auto& z = ctx.base;
    if (all_zero(v))
        return {0.0, NormStatus::ok};
    if (invisible_to(v, z))
        return {0.0, NormStatus::degenerate};
    auto level = [&](double t) {
        double s = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i)
            if (z[i] > 0.0 && v[i] != 0.0)
                s += z[i] * y(t * v[i]);
        return std::isnan(s) ? inf : s;
    };
    const double t = solve_increasing(level, 1.0, ctx.cfg);
    if (!(t > 0.0))
        throw BracketFailure("orlicz_gauge: degenerate root");
    return {1.0 / t, NormStatus::ok};
}

} // namespace detail

/// ||x|_KL* = sup{<x, y - z> : D_KL[y, z] <= 1}, attained at y = e^{b x} z with
/// D_KL[y, z] = 1.
inline NormResult support_norm_dual(std::span<const double> x, const NormContext& ctx)
{
    detail::require_size(x, ctx, "support_norm_dual");
    const auto& z = ctx.base;
    if (detail::all_zero(x))
        return {0.0, NormStatus::ok};
    if (detail::invisible_to(x, z))
        return {0.0, NormStatus::degenerate};
    auto divergence_at = [&](double beta) {
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (z[i] == 0.0 || x[i] == 0.0)
                continue;
            const double t = beta * x[i];
            // z (t e^t - e^t + 1)
            s += z[i] * (t * std::exp(t) - std::expm1(t));
        }
        return std::isnan(s) ? inf : s;
    };
    // For x <= 0 on the support of z the divergence along the tilt saturates
    // at the z-mass where x < 0. If that mass is at most 1 the supremum sits
    // at the limit measure, which drops those outcomes entirely.
    double positive_part = 0.0, dropped_mass = 0.0, limit_value = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (z[i] == 0.0)
            continue;
        positive_part = std::max(positive_part, x[i]);
        if (x[i] < 0.0) {
            dropped_mass += z[i];
            limit_value -= x[i] * z[i];
        }
    }
    if (positive_part == 0.0 && dropped_mass <= 1.0)
        return {limit_value, NormStatus::ok};
    const double beta = solve_increasing(divergence_at, 1.0, ctx.cfg);
    double value = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (z[i] > 0.0)
            value += x[i] * std::expm1(beta * x[i]) * z[i];
    return {value, NormStatus::ok};
}

inline NormResult support_norm_dual(const RandomVariable& x, const NormContext& ctx)
{
    detail::require_same_space(x, ctx.base, "support_norm_dual");
    return support_norm_dual(x.values(), ctx);
}

/// ||x|_{F*} = inf{a > 0 : D*_KL[x / a, 0] <= 1}.
inline NormResult gauge_norm_dual(std::span<const double> x, const NormContext& ctx)
{
    detail::require_size(x, ctx, "gauge_norm_dual");
    return detail::orlicz_gauge(x, ctx, [](double s) { return phi_star(s); });
}

inline NormResult gauge_norm_dual(const RandomVariable& x, const NormContext& ctx)
{
    detail::require_same_space(x, ctx.base, "gauge_norm_dual");
    return gauge_norm_dual(x.values(), ctx);
}

/// Gauge of {u : D_KL[z + u, z] <= 1} at a direction u = y - z, with D_KL
/// extended by +inf off the positive cone. When the whole segment up to the
/// cone boundary stays inside the unit ball the result is 1 / a_dom and
/// flagged `capped`.
inline NormResult gauge_norm_primal_direction(std::span<const double> u, const NormContext& ctx)
{
    detail::require_size(u, ctx, "gauge_norm_primal");
    const auto& z = ctx.base;
    if (detail::all_zero(u))
        return {0.0, NormStatus::ok};
    double worst = 0.0; // max_i (-u_i / z_i)
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i] == 0.0)
            continue;
        if (z[i] == 0.0)
            return {inf, NormStatus::unreachable};
        worst = std::max(worst, -u[i] / z[i]);
    }
    const double alpha_dom = worst > 0.0 ? 1.0 / worst : inf;
    auto divergence_at = [&](double alpha) {
        double s = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i)
            if (u[i] != 0.0)
                s += z[i] * phi(std::max(-1.0, alpha * (u[i] / z[i])));
        return s;
    };
    if (std::isfinite(alpha_dom) && divergence_at(alpha_dom) < 1.0)
        return {1.0 / alpha_dom, NormStatus::capped};
    bool reached = false;
    const auto b = bracket_increasing(divergence_at, 1.0, 0.0, 1.0, ctx.cfg, &reached, alpha_dom);
    const double alpha = bisect_increasing(divergence_at, 1.0, b);
    return {1.0 / alpha, NormStatus::ok};
}

/// ||y - z|_KL for a measure y.
inline NormResult gauge_norm_primal(const Measure& y, const NormContext& ctx)
{
    detail::require_same_space(y, ctx.base, "gauge_norm_primal");
    std::vector<double> u(y.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        u[i] = y[i] - ctx.base[i];
    return gauge_norm_primal_direction(u, ctx);
}

/// inf{a > 0 : sum_i z_i Y(v_i / a) <= 1} for the chosen symmetrized Young
/// function. For the phi variants v is in relative coordinates u = y / z - 1.
inline NormResult luxemburg_norm(std::span<const double> v, const NormContext& ctx, LuxemburgVariant variant)
{
    detail::require_size(v, ctx, "luxemburg_norm");
    return detail::orlicz_gauge(v, ctx, [variant](double s) { return young(variant, s); });
}

/// max(||x|, ||-x|), the gauge of the balanced core N n -N of the dual ball.
inline NormResult symmetrized_norm_dual(std::span<const double> x, const NormContext& ctx)
{
    std::vector<double> neg(x.begin(), x.end());
    for (auto& e : neg)
        e = -e;
    const auto a = gauge_norm_dual(x, ctx);
    const auto b = gauge_norm_dual(neg, ctx);
    const bool degenerate = a.status == NormStatus::degenerate && b.status == NormStatus::degenerate;
    return {std::max(a.value, b.value), degenerate ? NormStatus::degenerate : NormStatus::ok};
}

/// rho(w, x) = ||x - w|_{F*}.
inline NormResult quasimetric_dual(const RandomVariable& w, const RandomVariable& x, const NormContext& ctx)
{
    return gauge_norm_dual(x - w, ctx);
}

/// rho(y1, y2) = ||y2 - y1|_KL, the primal gauge of the displacement at z.
inline NormResult quasimetric_primal(const Measure& y1, const Measure& y2, const NormContext& ctx)
{
    detail::require_same_space(y1, y2, "quasimetric_primal");
    detail::require_same_space(y1, ctx.base, "quasimetric_primal");
    std::vector<double> u(y1.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        u[i] = y2[i] - y1[i];
    return gauge_norm_primal_direction(u, ctx);
}

enum class NormKind {
    support_dual,
    gauge_dual,
    gauge_primal,
    symmetrized_dual,
    luxemburg_phi_abs,
    luxemburg_phi_neg_abs,
    luxemburg_phistar_abs,
    luxemburg_phistar_neg_abs,
};

inline const char* to_string(NormKind k)
{
    switch (k) {
    case NormKind::support_dual: return "support";
    case NormKind::gauge_dual: return "gauge";
    case NormKind::gauge_primal: return "primal";
    case NormKind::symmetrized_dual: return "symmetric";
    case NormKind::luxemburg_phi_abs: return "luxemburg:phi_abs";
    case NormKind::luxemburg_phi_neg_abs: return "luxemburg:phi_neg_abs";
    case NormKind::luxemburg_phistar_abs: return "luxemburg:phistar_abs";
    case NormKind::luxemburg_phistar_neg_abs: return "luxemburg:phistar_neg_abs";
    }
    return "?";
}

inline constexpr NormKind all_norm_kinds[] = {
    NormKind::support_dual,          NormKind::gauge_dual,
    NormKind::gauge_primal,          NormKind::symmetrized_dual,
    NormKind::luxemburg_phi_abs,     NormKind::luxemburg_phi_neg_abs,
    NormKind::luxemburg_phistar_abs, NormKind::luxemburg_phistar_neg_abs,
};

inline NormKind norm_kind_from(const std::string& s)
{
    for (auto k : all_norm_kinds)
        if (s == to_string(k))
            return k;
    throw DomainError("unknown norm kind '" + s + "'");
}

inline bool is_symmetric(NormKind k)
{
    return k != NormKind::support_dual && k != NormKind::gauge_dual && k != NormKind::gauge_primal;
}

/// Uniform entry point over a coordinate vector. Primal kinds read v as the
/// displacement y - z, Luxemburg kinds as relative coordinates.
inline NormResult norm_of(NormKind kind, std::span<const double> v, const NormContext& ctx)
{
    switch (kind) {
    case NormKind::support_dual: return support_norm_dual(v, ctx);
    case NormKind::gauge_dual: return gauge_norm_dual(v, ctx);
    case NormKind::gauge_primal: return gauge_norm_primal_direction(v, ctx);
    case NormKind::symmetrized_dual: return symmetrized_norm_dual(v, ctx);
    case NormKind::luxemburg_phi_abs: return luxemburg_norm(v, ctx, LuxemburgVariant::phi_abs);
    case NormKind::luxemburg_phi_neg_abs: return luxemburg_norm(v, ctx, LuxemburgVariant::phi_neg_abs);
    case NormKind::luxemburg_phistar_abs: return luxemburg_norm(v, ctx, LuxemburgVariant::phistar_abs);
    case NormKind::luxemburg_phistar_neg_abs: return luxemburg_norm(v, ctx, LuxemburgVariant::phistar_neg_abs);
    }
    throw DomainError("norm_of: unknown kind");
}

// ---------------------------------------------------------------------------
// Separation probes

namespace detail {

/// Derivative-free descent for a convex function: compass search over the
/// basis directions plus the extra directions, halving the step on failure.
template <class F>
std::pair<std::vector<double>, double> compass_minimize(F&& f, std::vector<double> start, double step,
                                                        const std::vector<std::vector<double>>& extra,
                                                        int max_evals = 20000)
{
    const std::size_t n = start.size();
    std::vector<std::vector<double>> dirs;
    for (std::size_t k = 0; k < n; ++k)
        for (double s : {1.0, -1.0}) {
            std::vector<double> d(n, 0.0);
            d[k] = s;
            dirs.push_back(std::move(d));
        }
    for (const auto& e : extra) {
        dirs.push_back(e);
        auto ne = e;
        for (auto& c : ne)
            c = -c;
        dirs.push_back(std::move(ne));
    }
    double best = f(start);
    int evals = 1;
    const double stop = step * 1e-12;
    std::vector<double> trial(n);
    while (step > stop && evals < max_evals) {
        bool moved = false;
        for (const auto& d : dirs) {
            for (std::size_t k = 0; k < n; ++k)
                trial[k] = start[k] + step * d[k];
            const double v = f(trial);
            ++evals;
            if (v < best) {
                best = v;
                start = trial;
                moved = true;
                break;
            }
        }
        if (!moved)
            step *= 0.5;
    }
    return {start, best};
}

} // namespace detail

/// Gauge of the balanced hull co[N u -N] of the dual unit ball,
/// inf_a ||a| + ||a - x|. Computed by compass descent, so the value is an
/// upper estimate; it is exact at 0 and positive whenever the true value is.
inline double balanced_hull_norm_dual(std::span<const double> x, const NormContext& ctx)
{
    if (detail::all_zero(x))
        return 0.0;
    const std::vector<double> xv(x.begin(), x.end());
    auto f = [&](const std::vector<double>& a) {
        std::vector<double> d(a.size());
        for (std::size_t i = 0; i < a.size(); ++i)
            d[i] = a[i] - xv[i];
        return gauge_norm_dual(a, ctx).value + gauge_norm_dual(d, ctx).value;
    };
    double scale = 0.0;
    for (double e : xv)
        scale = std::max(scale, std::abs(e));
    std::vector<double> xhat(xv);
    for (auto& e : xhat)
        e /= scale;
    double best = inf;
    for (double s : {0.0, 0.5, 1.0}) {
        std::vector<double> a0(xv);
        for (auto& e : a0)
            e *= s;
        best = std::min(best, detail::compass_minimize(f, a0, 0.5 * scale, {xhat}, 4000).second);
    }
    return best;
}

struct ProbeSpec
{
    int random_directions = 16;
    std::uint64_t seed = 20160901;
};

struct DirectionProbe
{
    std::vector<double> direction;
    double forward = 0.0;   ///< ||d|
    double backward = 0.0;  ///< ||-d|
    double hull = 0.0;      ///< balanced-hull norm
};

struct SeparationReport
{
    std::vector<DirectionProbe> probes;
    double min_forward = inf;
    double min_symmetrized = inf;
    double min_hull = inf;
    bool t0 = true;
    bool t1 = true;
    bool t2 = true;
    bool dual_ball_bounded = true;
    std::vector<std::size_t> null_coordinates;
    std::vector<double> t0_witness; ///< empty if T0 passes
    std::vector<double> t1_witness; ///< empty if T1 passes
};

/// Probes +-basis and random directions with the dual gauge norm.
/// T0: max(||d|, ||-d|) > 0; T1: ||d| > 0; T2: balanced-hull norm > 0.
inline SeparationReport separation_report(const NormContext& ctx, const ProbeSpec& spec = {})
{
    const std::size_t n = ctx.size();
    std::vector<std::vector<double>> dirs;
    for (std::size_t k = 0; k < n; ++k)
        for (double s : {1.0, -1.0}) {
            std::vector<double> d(n, 0.0);
            d[k] = s;
            dirs.push_back(std::move(d));
        }
    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int r = 0; r < spec.random_directions; ++r) {
        std::vector<double> d(n);
        double len = 0.0;
        for (auto& e : d) {
            e = normal(rng);
            len += e * e;
        }
        len = std::sqrt(len);
        for (auto& e : d)
            e /= len;
        dirs.push_back(std::move(d));
    }

    SeparationReport rep;
    for (std::size_t i = 0; i < n; ++i)
        if (ctx.base[i] == 0.0)
            rep.null_coordinates.push_back(i);
    const double tol = ctx.cfg.abs_tol;
    for (auto& d : dirs) {
        DirectionProbe p;
        p.forward = gauge_norm_dual(d, ctx).value;
        auto nd = d;
        for (auto& e : nd)
            e = -e;
        p.backward = gauge_norm_dual(nd, ctx).value;
        p.hull = balanced_hull_norm_dual(d, ctx);
        p.direction = std::move(d);
        rep.min_forward = std::min(rep.min_forward, p.forward);
        rep.min_symmetrized = std::min(rep.min_symmetrized, std::max(p.forward, p.backward));
        rep.min_hull = std::min(rep.min_hull, p.hull);
        if (!(std::max(p.forward, p.backward) > tol) && rep.t0_witness.empty())
            rep.t0_witness = p.direction;
        if (!(p.forward > tol) && rep.t1_witness.empty())
            rep.t1_witness = p.direction;
        rep.probes.push_back(std::move(p));
    }
    rep.t0 = rep.min_symmetrized > tol;
    rep.t1 = rep.min_forward > tol && rep.null_coordinates.empty();
    rep.t2 = rep.min_hull > tol;
    rep.dual_ball_bounded = rep.t1;
    return rep;
}

// ---------------------------------------------------------------------------
// Unit-ball boundary samples for plotting

struct BallPoint
{
    double angle = 0.0;
    std::vector<double> point;
};

struct BallSample
{
    NormKind kind = NormKind::gauge_dual;
    std::vector<BallPoint> points;
    std::vector<double> omitted_angles; ///< directions with zero or infinite norm
};

/// Directions on the unit circle (2 outcomes) or an antipodally closed
/// spherical lattice (3 outcomes), each scaled to norm 1. Ordered by angle
/// (azimuth for 3 outcomes, ties by height).
inline BallSample ball_boundary_sample(const NormContext& ctx, NormKind kind, int count)
{
    const std::size_t n = ctx.size();
    if (n != 2 && n != 3)
        throw DimensionMismatch("ball_boundary_sample: needs a 2- or 3-outcome space");
    if (count < 8)
        throw DomainError("ball_boundary_sample: count must be at least 8");

    std::vector<std::vector<double>> dirs;
    if (n == 2) {
        for (int k = 0; k < count; ++k) {
            const double th = 2.0 * std::numbers::pi * k / count;
            dirs.push_back({std::cos(th), std::sin(th)});
        }
    }
    else {
        const int half = (count + 1) / 2;
        const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
        for (int k = 0; k < half && static_cast<int>(dirs.size()) < count; ++k) {
            const double h = 1.0 - (2.0 * k + 1.0) / (2.0 * half); // upper hemisphere first
            const double r = std::sqrt(std::max(0.0, 1.0 - h * h));
            const double az = golden * k;
            dirs.push_back({r * std::cos(az), r * std::sin(az), h});
        }
        const std::size_t upper = dirs.size();
        for (std::size_t k = 0; k < upper && static_cast<int>(dirs.size()) < count; ++k)
            dirs.push_back({-dirs[k][0], -dirs[k][1], -dirs[k][2]});
    }

    // cos(pi / 2) is 6e-17, not 0. Snap such residue so axis directions stay
    // on the axes and null outcomes of z are seen as exactly unvisited.
    for (auto& d : dirs)
        for (auto& c : d)
            if (std::abs(c) < 1e-15)
                c = 0.0;

    auto angle_of = [](const std::vector<double>& d) {
        double a = std::atan2(d[1], d[0]);
        if (a < 0.0)
            a += 2.0 * std::numbers::pi;
        return a;
    };
    std::sort(dirs.begin(), dirs.end(), [&](const auto& a, const auto& b) {
        const double aa = angle_of(a), ab = angle_of(b);
        if (aa != ab)
            return aa < ab;
        return a.size() > 2 && a[2] < b[2];
    });

    BallSample out;
    out.kind = kind;
    for (const auto& d : dirs) {
        const double a = angle_of(d);
        const auto r = norm_of(kind, d, ctx);
        if (!(r.value > 0.0) || !std::isfinite(r.value)) {
            out.omitted_angles.push_back(a);
            continue;
        }
        std::vector<double> p(d);
        for (auto& e : p)
            e /= r.value;
        out.points.push_back({a, std::move(p)});
    }
    return out;
}

} // namespace asymgeo
