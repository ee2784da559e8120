#pragma once

// Gauges, support functions and polars of polytopes containing the origin.
//
// A VPolytope is co[V u {0}] for a finite vertex list V. An HPolytope is
// {x : <a_j, x> <= 1 for all j}. The two are exchanged by the polar map:
// co[V u {0}]° = {x : <v, x> <= 1, v in V} and {<a_j, x> <= 1}° = co[A u {0}].

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "config.hpp"
#include "simplex.hpp"

namespace asymgeo {

using Point = std::vector<double>;

inline double dot(const Point& a, const Point& b)
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

inline Point negated(Point p)
{
    for (auto& e : p)
        e = -e;
    return p;
}

namespace detail {

inline void check_rows(std::size_t dim, const std::vector<Point>& rows, const char* what)
{
    if (dim < 1)
        throw DimensionMismatch(std::string(what) + ": dimension must be at least 1");
    for (const auto& r : rows) {
        if (r.size() != dim)
            throw DimensionMismatch(std::string(what) + ": row has wrong dimension");
        for (double v : r)
            if (!std::isfinite(v))
                throw DomainError(std::string(what) + ": non-finite coordinate");
    }
}

inline void check_point(std::size_t dim, const Point& x, const char* what)
{
    if (x.size() != dim)
        throw DimensionMismatch(std::string(what) + ": expected a point of dimension " + std::to_string(dim));
}

} // namespace detail

/// co[vertices u {0}]. An empty vertex list is the singleton {0}.
class VPolytope
{
  public:
    VPolytope(std::size_t dim, std::vector<Point> vertices)
        : dim_(dim), vertices_(std::move(vertices))
    {
        detail::check_rows(dim_, vertices_, "VPolytope");
    }

    std::size_t dim() const noexcept { return dim_; }
    const std::vector<Point>& vertices() const noexcept { return vertices_; }

  private:
    std::size_t dim_;
    std::vector<Point> vertices_;
};

/// {x : <a_j, x> <= 1 for every functional a_j}. No functionals: whole space.
class HPolytope
{
  public:
    HPolytope(std::size_t dim, std::vector<Point> functionals)
        : dim_(dim), functionals_(std::move(functionals))
    {
        detail::check_rows(dim_, functionals_, "HPolytope");
    }

    std::size_t dim() const noexcept { return dim_; }
    const std::vector<Point>& functionals() const noexcept { return functionals_; }

    bool contains(const Point& x, double tol = 1e-9) const
    {
        detail::check_point(dim_, x, "HPolytope::contains");
        for (const auto& a : functionals_)
            if (dot(a, x) > 1.0 + tol)
                return false;
        return true;
    }

  private:
    std::size_t dim_;
    std::vector<Point> functionals_;
};

inline HPolytope polar(const VPolytope& m) { return {m.dim(), m.vertices()}; }

inline VPolytope polar(const HPolytope& n) { return {n.dim(), n.functionals()}; }

/// s_M(x) = sup{<x, y> : y in M} = max(0, max_i <x, v_i>).
inline double support(const VPolytope& m, const Point& x)
{
    detail::check_point(m.dim(), x, "support");
    double s = 0.0;
    for (const auto& v : m.vertices())
        s = std::max(s, dot(x, v));
    return s;
}

/// mu_N(x) = inf{a > 0 : x / a in N} = max(0, max_j <a_j, x>). Always finite;
/// zero exactly on the recession cone.
inline double gauge(const HPolytope& n, const Point& x)
{
    detail::check_point(n.dim(), x, "gauge");
    double g = 0.0;
    for (const auto& a : n.functionals())
        g = std::max(g, dot(a, x));
    return g;
}

/// mu_M(x) for M = co[V u {0}], as the LP  min sum(l)  s.t.  sum_i l_i v_i = x,
/// l >= 0. Infeasible means x is never absorbed and the gauge is +inf.
inline double gauge(const VPolytope& m, const Point& x, const LpOptions& opt = {})
{
    detail::check_point(m.dim(), x, "gauge");
    const bool zero = std::all_of(x.begin(), x.end(), [](double v) { return v == 0.0; });
    if (zero)
        return 0.0;
    const auto& vs = m.vertices();
    if (vs.empty())
        return inf;
    LinearProgram lp;
    lp.objective.assign(vs.size(), -1.0);
    for (std::size_t k = 0; k < m.dim(); ++k) {
        std::vector<double> row(vs.size());
        for (std::size_t i = 0; i < vs.size(); ++i)
            row[i] = vs[i][k];
        lp.add_row(std::move(row), Relation::equal, x[k]);
    }
    const auto res = solve_lp(lp, opt);
    if (res.status != LpStatus::optimal)
        return inf;
    return std::max(0.0, -res.value);
}

/// s_N(y) for an H-polytope, via s_N = mu_{N°} with N° = co[A u {0}].
inline double support(const HPolytope& n, const Point& y, const LpOptions& opt = {})
{
    return gauge(polar(n), y, opt);
}

inline bool contains(const VPolytope& m, const Point& y, double tol = 1e-9)
{
    return gauge(m, y) <= 1.0 + tol;
}

/// co[-M u M]: vertices together with their negations.
inline VPolytope symmetrize_union(const VPolytope& m)
{
    auto vs = m.vertices();
    for (const auto& v : m.vertices())
        vs.push_back(negated(v));
    return {m.dim(), std::move(vs)};
}

/// -N n N: functionals together with their negations.
inline HPolytope symmetrize_intersection(const HPolytope& n)
{
    auto as = n.functionals();
    for (const auto& a : n.functionals())
        as.push_back(negated(a));
    return {n.dim(), std::move(as)};
}

enum class Symmetrization { sup, inf };

/// s[-M n M](x) as the LP  max <x, V l>  s.t.  V l + V m = 0, sum l <= 1,
/// sum m <= 1, l, m >= 0. This is the infimal convolution
/// inf_z { s_M(z) + s_M(z - x) }.
inline double support_balanced_core(const VPolytope& m, const Point& x, const LpOptions& opt = {})
{
    detail::check_point(m.dim(), x, "support_balanced_core");
    const auto& vs = m.vertices();
    const std::size_t k = vs.size();
    if (k == 0)
        return 0.0;
    LinearProgram lp;
    lp.objective.assign(2 * k, 0.0);
    for (std::size_t i = 0; i < k; ++i)
        lp.objective[i] = dot(x, vs[i]);
    for (std::size_t d = 0; d < m.dim(); ++d) {
        std::vector<double> row(2 * k);
        for (std::size_t i = 0; i < k; ++i) {
            row[i] = vs[i][d];
            row[k + i] = vs[i][d];
        }
        lp.add_row(std::move(row), Relation::equal, 0.0);
    }
    std::vector<double> first(2 * k, 0.0), second(2 * k, 0.0);
    std::fill(first.begin(), first.begin() + static_cast<std::ptrdiff_t>(k), 1.0);
    std::fill(second.begin() + static_cast<std::ptrdiff_t>(k), second.end(), 1.0);
    lp.add_row(std::move(first), Relation::less_equal, 1.0);
    lp.add_row(std::move(second), Relation::less_equal, 1.0);
    const auto res = solve_lp(lp, opt);
    if (res.status != LpStatus::optimal)
        throw DomainError("support_balanced_core: LP did not reach an optimum");
    return std::max(0.0, res.value);
}

/// s^s_M(x) = max(s_M(x), s_M(-x)) for `sup`, s°_M(x) = s[-M n M](x) for `inf`.
inline double support_symmetrized(const VPolytope& m, const Point& x, Symmetrization variant,
                                  const LpOptions& opt = {})
{
    if (variant == Symmetrization::sup)
        return std::max(support(m, x), support(m, negated(x)));
    return support_balanced_core(m, x, opt);
}

inline Point basis_vector(std::size_t dim, std::size_t k, double sign = 1.0)
{
    Point e(dim, 0.0);
    e[k] = sign;
    return e;
}

// Predicates. A V-polytope is absorbing iff its gauge is finite along every
// +-basis direction (then 0 is interior); an H-polytope is bounded iff its
// polar is absorbing. Balance is tested by membership of the negated
// generators, which is exact for convex hulls.

inline bool is_bounded(const VPolytope&) { return true; }

inline bool is_absorbing(const VPolytope& m)
{
    for (std::size_t k = 0; k < m.dim(); ++k)
        for (double s : {1.0, -1.0})
            if (!std::isfinite(gauge(m, basis_vector(m.dim(), k, s))))
                return false;
    return true;
}

inline bool is_balanced(const VPolytope& m, double tol = 1e-9)
{
    for (const auto& v : m.vertices())
        if (!contains(m, negated(v), tol))
            return false;
    return true;
}

inline bool is_absorbing(const HPolytope&) { return true; }

inline bool is_bounded(const HPolytope& n) { return is_absorbing(polar(n)); }

inline bool is_balanced(const HPolytope& n, double tol = 1e-9) { return is_balanced(polar(n), tol); }

} // namespace asymgeo
