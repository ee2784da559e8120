#pragma once

// Randomized property suites over every module. Used by `asymgeo verify` and
// by the test binaries. Each property reports its worst residual against a
// fixed tolerance; all suites are deterministic for a fixed seed.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <future>
#include <random>
#include <string>
#include <vector>

#include "asymnorm.hpp"
#include "bregman.hpp"
#include "expfam.hpp"
#include "integrand.hpp"
#include "measures.hpp"
#include "polar.hpp"

namespace asymgeo {

using Rng = std::mt19937_64;

// ---------------------------------------------------------------------------
// Random instance generators

inline double uniform(Rng& rng, double lo, double hi)
{
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniform_int(Rng& rng, int lo, int hi)
{
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline std::vector<double> random_vector(Rng& rng, std::size_t n, double lo, double hi)
{
    std::vector<double> v(n);
    for (auto& e : v)
        e = uniform(rng, lo, hi);
    return v;
}

inline Measure random_positive_measure(Rng& rng, const SpacePtr& space, double lo = 0.05, double hi = 2.0)
{
    return {space, random_vector(rng, space->size(), lo, hi)};
}

inline ProbabilityMeasure random_probability(Rng& rng, const SpacePtr& space, double lo = 0.05)
{
    return normalize(Measure(space, random_vector(rng, space->size(), lo, 1.0)));
}

inline VPolytope random_vpolytope(Rng& rng, std::size_t dim, int max_vertices = 20, double box = 2.0)
{
    const int k = uniform_int(rng, 1, max_vertices);
    std::vector<Point> vs;
    for (int i = 0; i < k; ++i)
        vs.push_back(random_vector(rng, dim, -box, box));
    return {dim, std::move(vs)};
}

/// Random point of co[V u {0}] as a convex combination with a slack weight on 0.
inline Point random_member(Rng& rng, const VPolytope& m)
{
    const auto& vs = m.vertices();
    std::vector<double> w(vs.size() + 1);
    double sum = 0.0;
    for (auto& e : w) {
        e = -std::log(uniform(rng, 1e-12, 1.0));
        sum += e;
    }
    Point y(m.dim(), 0.0);
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t d = 0; d < m.dim(); ++d)
            y[d] += w[i] / sum * vs[i][d];
    return y;
}

// ---------------------------------------------------------------------------
// Suite plumbing

enum class Suite { polar, bregman, norms, expfam };

inline const char* to_string(Suite s)
{
    switch (s) {
    case Suite::polar: return "polar";
    case Suite::bregman: return "bregman";
    case Suite::norms: return "norms";
    case Suite::expfam: return "expfam";
    }
    return "?";
}

struct VerifyOptions
{
    std::uint64_t seed = 20160901;
    int trials = 200;
    /// Flips one sign in every suite; used to check that the suites can fail.
    bool inject_fault = false;
    SolverConfig cfg{};
};

struct PropertyResult
{
    std::string suite;
    std::string name;
    bool passed = true;
    double worst = 0.0;     ///< largest violation amount observed (<= 0 means slack)
    double tolerance = 0.0;
    int trials = 0;
};

namespace detail {

/// Tracks max(residual) over trials against a tolerance.
class Tally
{
  public:
    Tally(std::string suite, std::string name, double tol)
        : r_{std::move(suite), std::move(name), true, -inf, tol, 0}
    {
    }

    void observe(double residual)
    {
        ++r_.trials;
        if (std::isnan(residual))
            residual = inf;
        r_.worst = std::max(r_.worst, residual);
        if (!(residual <= r_.tolerance))
            r_.passed = false;
    }

    void fail() { observe(inf); }

    PropertyResult result() const
    {
        auto r = r_;
        if (r.trials == 0)
            r.worst = 0.0;
        return r;
    }

  private:
    PropertyResult r_;
};

inline Rng suite_rng(const VerifyOptions& o, Suite s)
{
    return Rng(o.seed * 0x9E3779B97F4A7C15ull + static_cast<std::uint64_t>(s) + 1);
}

inline double rel_err(double a, double b)
{
    const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) / scale;
}

} // namespace detail

// ---------------------------------------------------------------------------
// polar

inline std::vector<PropertyResult> verify_polar(const VerifyOptions& o)
{
    auto rng = detail::suite_rng(o, Suite::polar);
    const double sign = o.inject_fault ? -1.0 : 1.0;
    detail::Tally duality("polar", "support equals gauge of polar", 1e-9);
    detail::Tally holder("polar", "asymmetric Holder inequality", 1e-9);
    detail::Tally bipolar("polar", "bipolar support agreement", 1e-9);
    detail::Tally homog("polar", "gauge positive homogeneity", 1e-12);
    detail::Tally subadd("polar", "gauge subadditivity", 1e-9);
    detail::Tally sup_exact("polar", "sup symmetrization exact form", 1e-12);
    detail::Tally ordering("polar", "symmetrization ordering", 1e-9);

    for (int t = 0; t < o.trials; ++t) {
        const auto dim = static_cast<std::size_t>(uniform_int(rng, 2, 5));
        const auto m = random_vpolytope(rng, dim);
        const auto x = random_vector(rng, dim, -2.0, 2.0);
        const auto pm = polar(m);

        duality.observe(std::abs(support(m, x) - sign * gauge(pm, x)));

        const auto y = random_member(rng, m);
        const double gy = gauge(m, y); // = s_{M°}(y)
        holder.observe(dot(x, y) - sign * support(m, x) * gy);

        // Redundant interior generators leave co[M u {0}] unchanged.
        auto extra = m.vertices();
        for (int k = 0; k < 3; ++k)
            extra.push_back(random_member(rng, m));
        const VPolytope m2(dim, std::move(extra));
        const auto bi = polar(polar(m2));
        LinearProgram lp;
        for (const auto& v : bi.vertices())
            lp.objective.push_back(dot(x, v));
        lp.add_row(std::vector<double>(bi.vertices().size(), 1.0), Relation::less_equal, 1.0);
        const double s_lp = std::max(0.0, solve_lp(lp).value);
        bipolar.observe(std::abs(s_lp - support(m, x)));

        const double beta = uniform(rng, 0.1, 5.0);
        Point bx(x);
        for (auto& e : bx)
            e *= beta;
        const double gx = gauge(m, x), gbx = gauge(m, bx);
        if (std::isfinite(gx) && std::isfinite(gbx))
            homog.observe(detail::rel_err(gbx, beta * gx));
        else
            homog.observe(std::isfinite(gx) == std::isfinite(gbx) ? 0.0 : inf);
        homog.observe(detail::rel_err(gauge(pm, bx), beta * gauge(pm, x)));

        const auto x2 = random_vector(rng, dim, -2.0, 2.0);
        Point sum(x);
        for (std::size_t d = 0; d < dim; ++d)
            sum[d] += x2[d];
        subadd.observe(gauge(pm, sum) - gauge(pm, x) - gauge(pm, x2));
        const double gs = gauge(m, sum), g1 = gauge(m, x), g2 = gauge(m, x2);
        if (std::isfinite(g1) && std::isfinite(g2))
            subadd.observe(gs - g1 - g2);

        const double ss = support_symmetrized(m, x, Symmetrization::sup);
        sup_exact.observe(std::abs(ss - std::max(support(m, x), support(m, negated(x)))));
        const double so = support_symmetrized(m, x, Symmetrization::inf);
        const double s = support(m, x);
        ordering.observe(std::max(s - ss, so - s));
    }
    return {duality.result(), holder.result(), bipolar.result(), homog.result(),
            subadd.result(),  sup_exact.result(), ordering.result()};
}

// ---------------------------------------------------------------------------
// bregman

inline std::vector<PropertyResult> verify_bregman(const VerifyOptions& o)
{
    auto rng = detail::suite_rng(o, Suite::bregman);
    const double sign = o.inject_fault ? -1.0 : 1.0;
    detail::Tally nonneg("bregman", "divergence nonnegativity", 0.0);
    detail::Tally dual("bregman", "primal equals dual divergence in gradient coordinates", 1e-9);
    detail::Tally change("bregman", "change of variables to phi", 1e-12);
    detail::Tally additive("bregman", "additivity on products", 1e-10);
    detail::Tally cosine("bregman", "generalized law of cosines", 1e-9);
    detail::Tally quad("bregman", "integral remainder equals divergence", 1e-7);
    detail::Tally grad("bregman", "central differences match gradient", 0.0);
    detail::Tally fenchel("bregman", "Fenchel-Young equality of built-ins", 1e-9);

    const ConvexIntegrand integrands[] = {kl_integrand(), quadratic_integrand(), abs_integrand(), phi_integrand(),
                                          phi_star_integrand()};
    const ConvexIntegrand smooth[] = {kl_integrand(), quadratic_integrand(), phi_integrand(), phi_star_integrand()};

    for (int t = 0; t < o.trials; ++t) {
        const auto n = static_cast<std::size_t>(uniform_int(rng, 2, 10));
        const auto sp = SampleSpace::indexed(n);
        const auto y = random_positive_measure(rng, sp);
        const auto z = random_positive_measure(rng, sp);
        const auto w = random_positive_measure(rng, sp);

        for (const auto& f : integrands) {
            const auto d = bregman_divergence(f, y, z);
            nonneg.observe(-d.value);
        }

        const double dkl = kl_divergence(y, z).value;
        std::vector<double> lr(n);
        for (std::size_t i = 0; i < n; ++i)
            lr[i] = std::log(z[i]) - std::log(y[i]);
        dual.observe(std::abs(dkl - dual_kl_divergence(RandomVariable(sp, lr), y)));

        std::vector<double> u(n), yz(n);
        double phisum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            u[i] = uniform(rng, -0.99, 3.0);
            yz[i] = (1.0 + u[i]) * z[i];
            phisum += z[i] * phi(u[i]);
        }
        change.observe(std::abs(kl_divergence(Measure(sp, yz), z).value - phisum));

        const auto n2 = static_cast<std::size_t>(uniform_int(rng, 2, 4));
        const auto sp2 = SampleSpace::indexed(n2);
        const auto p1 = random_probability(rng, sp), q1 = random_probability(rng, sp);
        const auto p2 = random_probability(rng, sp2), q2 = random_probability(rng, sp2);
        additive.observe(std::abs(kl_divergence(product_measure(p1, p2), product_measure(q1, q2)).value
                                  - kl_divergence(p1, q1).value - kl_divergence(p2, q2).value));

        for (const auto& f : smooth) {
            double r = cosine_law_residual(f, y, z, w);
            if (o.inject_fault) {
                double inner = 0.0;
                const auto gz = integrand_gradient(f, z), gw = integrand_gradient(f, w);
                for (std::size_t i = 0; i < n; ++i)
                    inner += (gz[i] - gw[i]) * (z[i] - y[i]);
                r -= 2.0 * inner;
            }
            cosine.observe(std::abs(r));
        }

        // Segment margin >= 0.01 holds since both endpoints are >= 0.05.
        const auto kl = kl_integrand();
        quad.observe(std::abs(taylor_remainder_integral(kl, y, z, o.cfg).value - sign * dkl));

        std::vector<double> delta = random_vector(rng, n, -1.0, 1.0);
        double exact = 0.0, k3 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            exact += (std::log(y[i]) - std::log(z[i])) * delta[i];
            k3 += std::pow(std::abs(delta[i]), 3) / (y[i] * y[i]);
        }
        for (double h : {1e-4, 1e-5}) {
            std::vector<double> yp(y.weight_vector()), ym(y.weight_vector());
            for (std::size_t i = 0; i < n; ++i) {
                yp[i] += h * delta[i];
                ym[i] -= h * delta[i];
            }
            const double fd = (kl_divergence(Measure(sp, yp), z).value - kl_divergence(Measure(sp, ym), z).value)
                            / (2.0 * h);
            // Truncation error h^2/6 sum |d|^3 |f'''| plus cancellation noise.
            grad.observe(std::abs(fd - exact) - (k3 * h * h + 1e-9));
        }

        for (const auto& f : smooth) {
            const double tpt = f.name == "kl" ? uniform(rng, 0.01, 5.0)
                             : f.name == "phi" ? uniform(rng, -0.99, 5.0)
                                               : uniform(rng, -3.0, 3.0);
            const double s = f.right_deriv(tpt);
            fenchel.observe(std::abs(f.conjugate(s) + f.value(tpt) - tpt * s));
        }
    }
    return {nonneg.result(),   dual.result(), change.result(), additive.result(),
            cosine.result(),   quad.result(), grad.result(),   fenchel.result()};
}

// ---------------------------------------------------------------------------
// norms

inline std::vector<PropertyResult> verify_norms(const VerifyOptions& o)
{
    auto rng = detail::suite_rng(o, Suite::norms);
    const double sign = o.inject_fault ? -1.0 : 1.0;
    std::vector<detail::Tally> homog, subadd;
    for (auto k : all_norm_kinds) {
        homog.emplace_back("norms", std::string("positive homogeneity: ") + to_string(k), 1e-10);
        subadd.emplace_back("norms", std::string("subadditivity: ") + to_string(k), 1e-9);
    }
    detail::Tally primal_chain("norms", "primal Luxemburg ordering chain", 1e-9);
    detail::Tally dual_chain("norms", "dual Luxemburg ordering chain", 1e-9);
    detail::Tally holder("norms", "tilted points respect the support norm", 1e-9);
    detail::Tally asym("norms", "asymmetry witness gap", 0.0);

    {
        const NormContext ctx(Measure({0.5, 0.5}), o.cfg);
        const double a = gauge_norm_dual(std::vector<double>{1.0, 0.0}, ctx).value;
        const double b = gauge_norm_dual(std::vector<double>{-1.0, 0.0}, ctx).value;
        asym.observe(0.3 - sign * (a - b));
    }

    for (int t = 0; t < o.trials; ++t) {
        const auto n = static_cast<std::size_t>(uniform_int(rng, 2, 6));
        const NormContext ctx(random_probability(rng, SampleSpace::indexed(n)), o.cfg);
        const auto v1 = random_vector(rng, n, -2.0, 2.0);
        const auto v2 = random_vector(rng, n, -2.0, 2.0);
        std::vector<double> sum(n);
        for (std::size_t i = 0; i < n; ++i)
            sum[i] = v1[i] + v2[i];
        const double beta = uniform(rng, 0.1, 10.0);
        std::vector<double> scaled(v1);
        for (auto& e : scaled)
            e *= beta;

        std::size_t idx = 0;
        for (auto k : all_norm_kinds) {
            const double a = norm_of(k, v1, ctx).value;
            const double b = norm_of(k, scaled, ctx).value;
            homog[idx].observe(detail::rel_err(b, beta * a));
            const double s = norm_of(k, sum, ctx).value;
            const double r = s - norm_of(k, v1, ctx).value - norm_of(k, v2, ctx).value;
            subadd[idx].observe(std::isfinite(s) ? r : 0.0);
            ++idx;
        }

        // Relative coordinates: u = y - z, v = u / z.
        std::vector<double> u(n), v(n);
        for (std::size_t i = 0; i < n; ++i) {
            v[i] = v1[i];
            u[i] = v[i] * ctx.base[i];
        }
        const double lo = luxemburg_norm(v, ctx, LuxemburgVariant::phi_abs).value;
        const double mid = gauge_norm_primal_direction(u, ctx).value;
        const double hi = luxemburg_norm(v, ctx, LuxemburgVariant::phi_neg_abs).value;
        primal_chain.observe(std::max(lo - mid, mid - hi));

        const double dhi = luxemburg_norm(v1, ctx, LuxemburgVariant::phistar_abs).value;
        const double dmid = gauge_norm_dual(v1, ctx).value;
        const double dlo = luxemburg_norm(v1, ctx, LuxemburgVariant::phistar_neg_abs).value;
        dual_chain.observe(std::max(dlo - dmid, dmid - dhi));

        // Points y = e^{b x'} z on the sphere D_KL[y, z] = 1 are feasible for
        // the supremum defining ||x|.
        const double sx = support_norm_dual(v1, ctx).value;
        auto xp = random_vector(rng, n, -2.0, 2.0);
        // The tilt only reaches the unit sphere when some coordinate grows.
        if (*std::max_element(xp.begin(), xp.end()) <= 0.0)
            xp[0] = 1.0;
        auto dv = [&](double b) {
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double e = b * xp[i];
                s += ctx.base[i] * (e * std::exp(e) - std::expm1(e));
            }
            return s;
        };
        const double bs = solve_increasing(dv, 1.0, ctx.cfg);
        double pair = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            pair += v1[i] * std::expm1(bs * xp[i]) * ctx.base[i];
        holder.observe(pair - sign * sx);
    }

    std::vector<PropertyResult> out;
    for (auto& h : homog)
        out.push_back(h.result());
    for (auto& s : subadd)
        out.push_back(s.result());
    out.push_back(primal_chain.result());
    out.push_back(dual_chain.result());
    out.push_back(holder.result());
    out.push_back(asym.result());
    return out;
}

// ---------------------------------------------------------------------------
// expfam

/// Brute-force maximum of <x, p> over a simplex grid of step 1/steps,
/// restricted to D_KL[p, q] <= lambda. Three outcomes only.
inline double grid_max_expectation(const std::vector<double>& x, const std::vector<double>& q, double lambda,
                                   int steps = 1000)
{
    double best = -inf;
    for (int a = 0; a <= steps; ++a)
        for (int b = 0; a + b <= steps; ++b) {
            const double p[3] = {static_cast<double>(a) / steps, static_cast<double>(b) / steps,
                                 static_cast<double>(steps - a - b) / steps};
            double d = 0.0;
            for (int i = 0; i < 3; ++i)
                if (p[i] > 0.0)
                    d += p[i] * std::log(p[i] / q[static_cast<std::size_t>(i)]);
            if (d <= lambda)
                best = std::max(best, p[0] * x[0] + p[1] * x[1] + p[2] * x[2]);
        }
    return best;
}

inline std::vector<PropertyResult> verify_expfam(const VerifyOptions& o)
{
    auto rng = detail::suite_rng(o, Suite::expfam);
    const double sign = o.inject_fault ? -1.0 : 1.0;
    detail::Tally active("expfam", "constraint is active", 1e-8);
    detail::Tally oracle("expfam", "optimal against grid oracle", 1e-3);
    detail::Tally monotone("expfam", "value nondecreasing in lambda", 1e-12);
    detail::Tally legendre("expfam", "Legendre duality bound", 1e-9);
    detail::Tally normalized("expfam", "tilted member is normalized", 1e-12);
    detail::Tally convex("expfam", "log-partition convex in beta", 1e-12);
    detail::Tally sandwich("expfam", "min <= reference mean <= max", 1e-12);

    const int oracle_trials = std::min(o.trials, 25);
    for (int t = 0; t < o.trials; ++t) {
        const auto n = static_cast<std::size_t>(uniform_int(rng, 2, 6));
        const auto sp = SampleSpace::indexed(n);
        const auto q = random_probability(rng, sp);
        const RandomVariable x(sp, random_vector(rng, n, -2.0, 2.0));
        const double lambda = uniform(rng, 0.0, 0.5);

        const auto sol = solve_max_expectation(x, q, lambda, o.cfg);
        if (!sol.constraint_slack)
            active.observe(std::abs(kl_divergence(sol.p, q).value - lambda));

        for (double b : {0.25, 0.5, 1.0, 2.0, 4.0, 8.0}) {
            const double bound = (lambda + cumulant_generating(x, q, b)) / b;
            legendre.observe(sign * (sol.value - bound));
        }

        const auto mn = solve_min_expectation(x, q, lambda, o.cfg);
        const double mean = pairing(x, q);
        sandwich.observe(std::max(mn.value - mean, mean - sol.value));

        double prev = -inf;
        for (double l : {0.0, 0.05, 0.1, 0.2, 0.4, 0.8}) {
            const double v = solve_max_expectation(x, q, l, o.cfg).value;
            monotone.observe(prev - v);
            prev = v;
        }

        const double b = uniform(rng, -3.0, 3.0);
        normalized.observe(std::abs(tilt(x, q, b).member.total_mass() - 1.0));
        const double b2 = uniform(rng, -3.0, 3.0);
        convex.observe(cumulant_generating(x, q, 0.5 * (b + b2))
                       - 0.5 * (cumulant_generating(x, q, b) + cumulant_generating(x, q, b2)));

        if (t < oracle_trials) {
            const auto sp3 = SampleSpace::indexed(3);
            const auto q3 = random_probability(rng, sp3);
            const RandomVariable x3(sp3, random_vector(rng, 3, -2.0, 2.0));
            const double l3 = uniform(rng, 0.01, 0.5);
            const auto s3 = solve_max_expectation(x3, q3, l3, o.cfg);
            const double g = grid_max_expectation(x3.value_vector(), q3.weight_vector(), l3);
            oracle.observe(g - sign * s3.value);
        }
    }
    return {active.result(),     oracle.result(),  monotone.result(), legendre.result(),
            normalized.result(), convex.result(),  sandwich.result()};
}

inline std::vector<PropertyResult> run_suite(Suite s, const VerifyOptions& o)
{
    switch (s) {
    case Suite::polar: return verify_polar(o);
    case Suite::bregman: return verify_bregman(o);
    case Suite::norms: return verify_norms(o);
    case Suite::expfam: return verify_expfam(o);
    }
    return {};
}

/// Runs the suites concurrently; results come back in the order given.
inline std::vector<PropertyResult> run_suites(const std::vector<Suite>& suites, const VerifyOptions& o)
{
    std::vector<std::future<std::vector<PropertyResult>>> jobs;
    for (auto s : suites)
        jobs.push_back(std::async(std::launch::async, [s, &o] { return run_suite(s, o); }));
    std::vector<PropertyResult> all;
    for (auto& j : jobs) {
        auto r = j.get();
        all.insert(all.end(), r.begin(), r.end());
    }
    return all;
}

} // namespace asymgeo
