#pragma once

// Dense two-phase primal simplex with Bland's rule. Sized for polytope
// membership and support problems with a handful of rows and at most a few
// hundred columns.

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "errors.hpp"

namespace asymgeo {

enum class Relation { less_equal, equal, greater_equal };

/// maximize c^T x  subject to  a_r^T x (<=|=|>=) b_r,  x >= 0.
struct LinearProgram
{
    struct Row
    {
        std::vector<double> coeffs;
        Relation rel = Relation::less_equal;
        double rhs = 0.0;
    };

    std::vector<double> objective;
    std::vector<Row> rows;

    void add_row(std::vector<double> coeffs, Relation rel, double rhs)
    {
        rows.push_back({std::move(coeffs), rel, rhs});
    }
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult
{
    LpStatus status = LpStatus::infeasible;
    double value = 0.0;
    std::vector<double> x;
    int pivots = 0;
};

struct LpOptions
{
    int max_pivots = 20000;
    double pivot_tol = 1e-11;
    double feasibility_tol = 1e-9;
};

namespace detail {

class Tableau
{
  public:
    Tableau(std::size_t rows, std::size_t cols)
        : m_(rows), n_(cols), a_(rows * cols, 0.0), rhs_(rows, 0.0), cost_(cols, 0.0), basis_(rows, 0)
    {
    }

    double& at(std::size_t r, std::size_t c) { return a_[r * n_ + c]; }
    double at(std::size_t r, std::size_t c) const { return a_[r * n_ + c]; }
    double& rhs(std::size_t r) { return rhs_[r]; }
    std::size_t& basis(std::size_t r) { return basis_[r]; }
    std::size_t basis(std::size_t r) const { return basis_[r]; }
    std::size_t rows() const { return m_; }
    std::size_t cols() const { return n_; }

    /// Installs objective coefficients and prices out the current basis.
    void set_objective(const std::vector<double>& c)
    {
        cost_ = c;
        cost_rhs_ = 0.0;
        for (std::size_t r = 0; r < m_; ++r) {
            const double cb = cost_[basis_[r]];
            if (cb == 0.0)
                continue;
            for (std::size_t j = 0; j < n_; ++j)
                cost_[j] -= cb * at(r, j);
            cost_rhs_ -= cb * rhs_[r];
        }
    }

    double objective_value() const { return -cost_rhs_; }

    void pivot(std::size_t pr, std::size_t pc)
    {
        const double p = at(pr, pc);
        for (std::size_t j = 0; j < n_; ++j)
            at(pr, j) /= p;
        rhs_[pr] /= p;
        at(pr, pc) = 1.0;
        for (std::size_t r = 0; r < m_; ++r) {
            if (r == pr)
                continue;
            const double f = at(r, pc);
            if (f == 0.0)
                continue;
            for (std::size_t j = 0; j < n_; ++j)
                at(r, j) -= f * at(pr, j);
            at(r, pc) = 0.0;
            rhs_[r] -= f * rhs_[pr];
        }
        const double f = cost_[pc];
        if (f != 0.0) {
            for (std::size_t j = 0; j < n_; ++j)
                cost_[j] -= f * at(pr, j);
            cost_[pc] = 0.0;
            cost_rhs_ -= f * rhs_[pr];
        }
        basis_[pr] = pc;
    }

    /// Bland's rule iterations over columns [0, allowed). Returns false if
    /// the objective is unbounded.
    bool optimize(std::size_t allowed, const LpOptions& opt, int& pivots)
    {
        for (;;) {
            std::size_t enter = allowed;
            for (std::size_t j = 0; j < allowed; ++j)
                if (cost_[j] > opt.pivot_tol) {
                    enter = j;
                    break;
                }
            if (enter == allowed)
                return true;
            std::size_t leave = m_;
            double best = 0.0;
            for (std::size_t r = 0; r < m_; ++r) {
                const double a = at(r, enter);
                if (a <= opt.pivot_tol)
                    continue;
                const double ratio = rhs_[r] / a;
                if (leave == m_ || ratio < best - 1e-15
                    || (std::abs(ratio - best) <= 1e-15 && basis_[r] < basis_[leave])) {
                    leave = r;
                    best = ratio;
                }
            }
            if (leave == m_)
                return false;
            if (++pivots > opt.max_pivots)
                throw LpIterationLimit("simplex: pivot limit of " + std::to_string(opt.max_pivots) + " exceeded");
            pivot(leave, enter);
        }
    }

  private:
    std::size_t m_, n_;
    std::vector<double> a_;
    std::vector<double> rhs_;
    std::vector<double> cost_;
    double cost_rhs_ = 0.0;
    std::vector<std::size_t> basis_;
};

} // namespace detail

inline LpResult solve_lp(const LinearProgram& lp, const LpOptions& opt = {})
{
    const std::size_t n = lp.objective.size();
    const std::size_t m = lp.rows.size();

    // Column layout: originals | slack or surplus per inequality | artificials.
    std::size_t n_slack = 0, n_art = 0;
    std::vector<Relation> rel(m);
    std::vector<double> sign(m, 1.0);
    for (std::size_t r = 0; r < m; ++r) {
        if (lp.rows[r].coeffs.size() != n)
            throw DimensionMismatch("solve_lp: row width does not match the objective");
        rel[r] = lp.rows[r].rel;
        if (lp.rows[r].rhs < 0.0) {
            sign[r] = -1.0;
            if (rel[r] == Relation::less_equal)
                rel[r] = Relation::greater_equal;
            else if (rel[r] == Relation::greater_equal)
                rel[r] = Relation::less_equal;
        }
        if (rel[r] != Relation::equal)
            ++n_slack;
        if (rel[r] != Relation::less_equal)
            ++n_art;
    }
    const std::size_t art0 = n + n_slack;
    detail::Tableau t(m, art0 + n_art);
    std::size_t s = n, a = art0;
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t j = 0; j < n; ++j)
            t.at(r, j) = sign[r] * lp.rows[r].coeffs[j];
        t.rhs(r) = sign[r] * lp.rows[r].rhs;
        if (rel[r] == Relation::less_equal) {
            t.at(r, s) = 1.0;
            t.basis(r) = s++;
        }
        else {
            if (rel[r] == Relation::greater_equal)
                t.at(r, s++) = -1.0;
            t.at(r, a) = 1.0;
            t.basis(r) = a++;
        }
    }

    LpResult res;
    if (n_art > 0) {
        std::vector<double> c1(t.cols(), 0.0);
        for (std::size_t j = art0; j < t.cols(); ++j)
            c1[j] = -1.0;
        t.set_objective(c1);
        t.optimize(t.cols(), opt, res.pivots);
        if (t.objective_value() < -opt.feasibility_tol) {
            res.status = LpStatus::infeasible;
            return res;
        }
        // Drive zero-level artificials out of the basis where possible.
        for (std::size_t r = 0; r < m; ++r) {
            if (t.basis(r) < art0)
                continue;
            for (std::size_t j = 0; j < art0; ++j)
                if (std::abs(t.at(r, j)) > opt.pivot_tol) {
                    t.pivot(r, j);
                    break;
                }
        }
    }

    std::vector<double> c2(t.cols(), 0.0);
    for (std::size_t j = 0; j < n; ++j)
        c2[j] = lp.objective[j];
    t.set_objective(c2);
    if (!t.optimize(art0, opt, res.pivots)) {
        res.status = LpStatus::unbounded;
        res.value = std::numeric_limits<double>::infinity();
        return res;
    }
    res.status = LpStatus::optimal;
    res.value = t.objective_value();
    res.x.assign(n, 0.0);
    for (std::size_t r = 0; r < m; ++r)
        if (t.basis(r) < n)
            res.x[t.basis(r)] = t.rhs(r);
    return res;
}

} // namespace asymgeo
