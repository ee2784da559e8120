#pragma once

// Exponential tilting p(b) = e^{b x - Psi_q(b x)} q and its use as the
// solution of divergence-constrained expectation problems, including the
// truncated St. Petersburg lottery and mutual-information-constrained
// channels.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bregman.hpp"
#include "config.hpp"
#include "measures.hpp"
#include "roots.hpp"

namespace asymgeo {

struct TiltedFamily
{
    Measure reference;
    RandomVariable direction;
    double beta = 0.0;
    double log_partition = 0.0;
    Measure member;
};

/// Member of the exponential family through q in direction x at parameter beta.
inline TiltedFamily tilt(const RandomVariable& x, const Measure& q, double beta)
{
    detail::require_same_space(x, q, "tilt");
    const double psi = cumulant_generating(x, q, beta);
    if (!std::isfinite(psi))
        throw NotFinite("tilt: log-partition overflows");
    std::vector<double> w(q.size());
    for (std::size_t i = 0; i < w.size(); ++i)
        w[i] = q[i] > 0.0 ? std::exp(beta * x[i] - psi) * q[i] : 0.0;
    return {q, x, beta, psi, Measure(q.space(), std::move(w))};
}

struct ExpectationSolution
{
    Measure p;
    double beta = 0.0;   ///< natural parameter on x: p = e^{beta x - Psi} q (negative for minimization)
    double value = 0.0;  ///< <x, p>
    double divergence = 0.0;
    bool constraint_slack = false; ///< lambda at or beyond the largest attainable divergence
};

namespace detail {

/// D_KL[p(b), q] = b <x, p(b)> - Psi_q(b x), nondecreasing in b >= 0.
inline double tilted_divergence(const RandomVariable& x, const Measure& q, double beta)
{
    if (beta == 0.0)
        return 0.0;
    const double psi = cumulant_generating(x, q, beta);
    double mean = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (q[i] > 0.0)
            mean += x[i] * std::exp(beta * x[i] - psi) * q[i];
    return std::max(0.0, beta * mean - psi);
}

inline ExpectationSolution maximize(const RandomVariable& x, const ProbabilityMeasure& q, double lambda,
                                    const SolverConfig& cfg)
{
    detail::require_same_space(x, q, "solve_max_expectation");
    if (!(lambda >= 0.0) || std::isnan(lambda))
        throw DomainError("solve_max_expectation: lambda must be nonnegative");

    double top = -inf, bottom = inf;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (q[i] > 0.0) {
            top = std::max(top, x[i]);
            bottom = std::min(bottom, x[i]);
        }
    const Measure& qm = q;
    if (lambda == 0.0 || top == bottom)
        return {qm, 0.0, pairing(x, qm), 0.0, top == bottom && lambda > 0.0};

    // Largest attainable divergence: q conditioned on argmax x.
    double top_mass = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (q[i] > 0.0 && x[i] == top)
            top_mass += q[i];
    const double d_max = -std::log(top_mass);
    if (lambda >= d_max) {
        std::vector<double> w(q.size(), 0.0);
        for (std::size_t i = 0; i < x.size(); ++i)
            if (q[i] > 0.0 && x[i] == top)
                w[i] = q[i] / top_mass;
        Measure p(q.space(), std::move(w));
        return {p, inf, top, d_max, true};
    }
    auto div = [&](double b) { return tilted_divergence(x, q, b); };
    const double beta = solve_increasing(div, lambda, cfg);
    auto fam = tilt(x, q, beta);
    return {fam.member, beta, pairing(x, fam.member), div(beta), false};
}

} // namespace detail

/// Maximizes <x, p> over {p : D_KL[p, q] <= lambda}; the optimum is the tilt
/// with D_KL[p(b), q] = lambda.
inline ExpectationSolution solve_max_expectation(const RandomVariable& x, const ProbabilityMeasure& q,
                                                 double lambda, const SolverConfig& cfg = {})
{
    return detail::maximize(x, q, lambda, cfg);
}

/// Minimizes <x, p> over the same ball by maximizing -x.
inline ExpectationSolution solve_min_expectation(const RandomVariable& x, const ProbabilityMeasure& q,
                                                 double lambda, const SolverConfig& cfg = {})
{
    auto s = detail::maximize(-x, q, lambda, cfg);
    s.beta = -s.beta;
    s.value = pairing(x, s.p);
    return s;
}

// ---------------------------------------------------------------------------
// St. Petersburg lottery

struct TruncatedLottery
{
    int truncation = 40;     ///< N, tosses 1..N
    double head_prob = 0.5;  ///< h
    double payoff_base = 2.0;

    void validate() const
    {
        if (truncation < 1)
            throw DomainError("TruncatedLottery: truncation must be at least 1");
        if (truncation > 60)
            throw SizeLimitExceeded("TruncatedLottery: truncation above 60 is not supported");
        if (!(head_prob > 0.0 && head_prob < 1.0))
            throw DomainError("TruncatedLottery: head probability must lie in (0, 1)");
        if (!(payoff_base > 1.0))
            throw DomainError("TruncatedLottery: payoff base must exceed 1");
    }

    /// (1 - h)^{n-1} h for n = 1..N.
    std::vector<double> weights(int n_max) const
    {
        std::vector<double> w(static_cast<std::size_t>(n_max));
        for (int n = 1; n <= n_max; ++n)
            w[static_cast<std::size_t>(n - 1)] = std::pow(1.0 - head_prob, n - 1) * head_prob;
        return w;
    }

    std::vector<double> payoffs(int n_max) const
    {
        std::vector<double> x(static_cast<std::size_t>(n_max));
        for (int n = 1; n <= n_max; ++n)
            x[static_cast<std::size_t>(n - 1)] = std::pow(payoff_base, n);
        return x;
    }

    double defect_mass(int n_max) const { return std::pow(1.0 - head_prob, n_max); }
};

enum class PsiVerdict { convergent, divergent, undetermined };

inline const char* to_string(PsiVerdict v)
{
    switch (v) {
    case PsiVerdict::convergent: return "CONVERGENT";
    case PsiVerdict::divergent: return "DIVERGENT";
    case PsiVerdict::undetermined: return "UNDETERMINED";
    }
    return "?";
}

struct PsiEntry
{
    double beta = 0.0;
    int truncation = 0;
    double value = 0.0;
    PsiVerdict verdict = PsiVerdict::undetermined;
    bool conditioned = false;
};

struct LotteryReport
{
    TruncatedLottery lottery;
    double expectation_raw = 0.0;
    double expectation_conditioned = 0.0;
    double defect_mass = 0.0;
    std::vector<PsiEntry> psi_table;
};

namespace detail {

inline double lottery_psi(const TruncatedLottery& lot, int n_max, double beta, bool conditioned)
{
    const auto w = lot.weights(n_max);
    const auto x = lot.payoffs(n_max);
    double m = -inf;
    for (std::size_t i = 0; i < w.size(); ++i)
        m = std::max(m, beta * x[i]);
    double s = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i)
        s += w[i] * std::exp(beta * x[i] - m);
    double psi = m + std::log(s);
    if (conditioned)
        psi -= std::log1p(-lot.defect_mass(n_max));
    return psi;
}

} // namespace detail

/// Truncated expectations and a convergence probe of Psi_q(beta x) across
/// truncations N, N+10, N+20. A beta is DIVERGENT when both increments
/// exceed 1, CONVERGENT when both are below 1e-9.
inline LotteryReport st_petersburg_report(const TruncatedLottery& lot, const std::vector<double>& beta_grid)
{
    lot.validate();
    LotteryReport rep;
    rep.lottery = lot;
    const int n = lot.truncation;
    const auto w = lot.weights(n);
    const auto x = lot.payoffs(n);
    for (std::size_t i = 0; i < w.size(); ++i)
        rep.expectation_raw += w[i] * x[i];
    rep.defect_mass = lot.defect_mass(n);
    rep.expectation_conditioned = rep.expectation_raw / (1.0 - rep.defect_mass);

    for (bool conditioned : {false, true}) {
        for (double beta : beta_grid) {
            double vals[3];
            for (int k = 0; k < 3; ++k)
                vals[k] = detail::lottery_psi(lot, n + 10 * k, beta, conditioned);
            const double d1 = vals[1] - vals[0], d2 = vals[2] - vals[1];
            PsiVerdict verdict = PsiVerdict::undetermined;
            if (d1 > 1.0 && d2 > 1.0)
                verdict = PsiVerdict::divergent;
            else if (std::abs(d1) < 1e-9 && std::abs(d2) < 1e-9)
                verdict = PsiVerdict::convergent;
            for (int k = 0; k < 3; ++k)
                rep.psi_table.push_back({beta, n + 10 * k, vals[k], verdict, conditioned});
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Channels and mutual information

/// D_KL[w, q (x) p] after checking that q and p are w's marginals.
inline double mutual_information(const Measure& w, const Measure& q, const Measure& p, double tol = 1e-9)
{
    const auto prod = product_measure(q, p);
    detail::require_same_space(w, prod, "mutual_information");
    const auto [left, right] = marginals(w, q.size(), p.size());
    for (std::size_t i = 0; i < left.size(); ++i)
        if (std::abs(left[i] - q[i]) > tol) {
            std::string msg = "mutual_information: first marginal of w is (";
            for (std::size_t k = 0; k < left.size(); ++k)
                msg += (k ? ", " : "") + std::to_string(left[k]);
            throw MarginalMismatch(msg + ")");
        }
    for (std::size_t j = 0; j < right.size(); ++j)
        if (std::abs(right[j] - p[j]) > tol) {
            std::string msg = "mutual_information: second marginal of w is (";
            for (std::size_t k = 0; k < right.size(); ++k)
                msg += (k ? ", " : "") + std::to_string(right[k]);
            throw MarginalMismatch(msg + ")");
        }
    return kl_divergence(w, prod).value;
}

/// Sequences of length l over {0, .., alphabet-1}, labelled "010" style.
inline SpacePtr sequence_space(int length, int alphabet)
{
    if (length < 1 || alphabet < 2)
        throw DomainError("sequence_space: need length >= 1 and alphabet >= 2");
    double count = std::pow(static_cast<double>(alphabet), length);
    if (count * count > static_cast<double>(1 << 20))
        throw SizeLimitExceeded("sequence_space: alphabet^(2 l) exceeds 2^20");
    std::vector<std::string> labels;
    const auto total = static_cast<std::size_t>(count);
    for (std::size_t k = 0; k < total; ++k) {
        std::string s(static_cast<std::size_t>(length), '0');
        std::size_t r = k;
        for (int pos = length - 1; pos >= 0; --pos) {
            const auto digit = static_cast<int>(r % static_cast<std::size_t>(alphabet));
            s[static_cast<std::size_t>(pos)] = digit < 10 ? static_cast<char>('0' + digit)
                                                          : static_cast<char>('a' + digit - 10);
            r /= static_cast<std::size_t>(alphabet);
        }
        labels.push_back(std::move(s));
    }
    return make_space(std::move(labels));
}

/// Hamming distance (mismatch count) on sequence pairs, as a random variable
/// on product_space(sequence_space, sequence_space).
inline RandomVariable hamming_cost(int length, int alphabet)
{
    if (alphabet > 36)
        throw SizeLimitExceeded("hamming_cost: alphabet above 36 symbols");
    auto seq = sequence_space(length, alphabet);
    const auto& labels = seq->labels();
    std::vector<double> d;
    d.reserve(labels.size() * labels.size());
    for (const auto& a : labels)
        for (const auto& b : labels) {
            int mism = 0;
            for (std::size_t k = 0; k < a.size(); ++k)
                mism += a[k] != b[k];
            d.push_back(mism);
        }
    return {product_space(*seq, *seq), std::move(d)};
}

/// Space whose labels are the grid values.
inline SpacePtr grid_space(const std::vector<double>& grid)
{
    std::vector<std::string> labels;
    for (double g : grid) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.12g", g);
        labels.emplace_back(buf);
    }
    return make_space(std::move(labels));
}

/// (a - b)^2 on a one-dimensional grid.
inline RandomVariable squared_euclidean_cost(const std::vector<double>& grid)
{
    if (grid.empty())
        throw DomainError("squared_euclidean_cost: empty grid");
    if (grid.size() * grid.size() > (1u << 20))
        throw SizeLimitExceeded("squared_euclidean_cost: grid^2 exceeds 2^20");
    auto sp = grid_space(grid);
    std::vector<double> d;
    d.reserve(grid.size() * grid.size());
    for (double a : grid)
        for (double b : grid)
            d.push_back((a - b) * (a - b));
    return {product_space(*sp, *sp), std::move(d)};
}

struct ChannelSolution
{
    Measure joint;
    double beta = 0.0;
    double divergence = 0.0;       ///< D_KL[w, q (x) p]
    double expected_utility = 0.0; ///< <x, w>
    bool constraint_slack = false;
    std::map<double, double> utility_histogram; ///< distribution of x under w
};

inline std::map<double, double> histogram(const RandomVariable& x, const Measure& w)
{
    std::map<double, double> h;
    for (std::size_t i = 0; i < x.size(); ++i)
        h[x[i]] += w[i];
    return h;
}

/// Tilts the fixed product q (x) p in direction x (a utility, i.e. negated
/// cost) so that D_KL[w, q (x) p] = lambda. The reference product is not
/// updated.
inline ChannelSolution solve_channel(const RandomVariable& x, const ProbabilityMeasure& q,
                                     const ProbabilityMeasure& p, double lambda, const SolverConfig& cfg = {})
{
    const ProbabilityMeasure ref(product_measure(q, p), 1e-9);
    if (!same_space(x.space(), ref.space()))
        throw SpaceMismatch("solve_channel: utility is not defined on the product space");
    auto sol = solve_max_expectation(x, ref, lambda, cfg);
    ChannelSolution out{sol.p, sol.beta, sol.divergence, sol.value, sol.constraint_slack, {}};
    out.utility_histogram = histogram(x, sol.p);
    return out;
}

} // namespace asymgeo
