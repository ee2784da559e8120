#include <asymgeo/expfam.hpp>
#include <asymgeo/verify.hpp>

#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace asymgeo;

namespace {

const ProbabilityMeasure& fair()
{
    static const ProbabilityMeasure q({0.5, 0.5});
    return q;
}

} // namespace

TEST(MaxExpectation, BinaryEntropyEquation)
{
    // x = indicator of outcome 0 under a fair coin: the optimum puts mass p
    // on outcome 0 with p ln 2p + (1 - p) ln 2(1 - p) = lambda.
    const RandomVariable x(fair().space(), {1.0, 0.0});
    const double lambda = 0.1;
    const double p = oracle::bisect(
        [&](double s) { return s * std::log(2.0 * s) + (1.0 - s) * std::log(2.0 * (1.0 - s)) - lambda; }, 0.5,
        1.0 - 1e-15);
    const auto sol = solve_max_expectation(x, fair(), lambda);
    EXPECT_NEAR(sol.p[0], p, 1e-10);
    EXPECT_NEAR(sol.value, p, 1e-10);
    EXPECT_NEAR(sol.divergence, lambda, 1e-12);
    EXPECT_NEAR(p, 0.720, 5e-4);
    // beta is the log-odds of the tilt.
    EXPECT_NEAR(sol.beta, std::log(p / (1.0 - p)), 1e-8);
    EXPECT_FALSE(sol.constraint_slack);
}

TEST(MaxExpectation, LambdaZeroEchoesReference)
{
    const ProbabilityMeasure q({0.2, 0.3, 0.5});
    const RandomVariable x(q.space(), {3.0, -1.0, 0.5});
    const auto sol = solve_max_expectation(x, q, 0.0);
    EXPECT_EQ(sol.p.weight_vector(), q.weight_vector());
    EXPECT_EQ(sol.beta, 0.0);
}

TEST(MaxExpectation, SlackBeyondTheLargestDivergence)
{
    const ProbabilityMeasure q({0.25, 0.75});
    const RandomVariable x(q.space(), {1.0, 0.0});
    // The best achievable is the point mass at outcome 0 with D = ln 4.
    const auto sol = solve_max_expectation(x, q, 2.0);
    EXPECT_TRUE(sol.constraint_slack);
    EXPECT_EQ(sol.p[0], 1.0);
    EXPECT_EQ(sol.value, 1.0);
    EXPECT_NEAR(sol.divergence, std::log(4.0), 1e-15);
    EXPECT_EQ(sol.beta, inf);
}

TEST(MinExpectation, MirrorsMaximumOfNegation)
{
    Rng rng(31);
    for (int t = 0; t < 20; ++t) {
        const auto q = random_probability(rng, SampleSpace::indexed(4));
        const RandomVariable x(q.space(), random_vector(rng, 4, -2, 2));
        const double lambda = uniform(rng, 0.01, 0.3);
        const auto lo = solve_min_expectation(x, q, lambda);
        const auto hi = solve_max_expectation(-x, q, lambda);
        EXPECT_NEAR(lo.value, -hi.value, 1e-12);
        EXPECT_LE(lo.beta, 0.0);
        EXPECT_LE(lo.value, pairing(x, q));
    }
}

TEST(MaxExpectation, AgreesWithGridOracle)
{
    Rng rng(33);
    for (int t = 0; t < 10; ++t) {
        const auto q = random_probability(rng, SampleSpace::indexed(3));
        const RandomVariable x(q.space(), random_vector(rng, 3, -2, 2));
        const double lambda = uniform(rng, 0.01, 0.5);
        const auto sol = solve_max_expectation(x, q, lambda);
        const double grid = grid_max_expectation(x.value_vector(), q.weight_vector(), lambda, 400);
        EXPECT_GE(sol.value, grid - 1e-9);
        EXPECT_LE(sol.value - grid, 1e-2);
    }
}

TEST(Tilt, NormalizedMemberAndLogPartition)
{
    const ProbabilityMeasure q({0.1, 0.2, 0.7});
    const RandomVariable x(q.space(), {2.0, -1.0, 0.5});
    const auto fam = tilt(x, q, 1.7);
    EXPECT_NEAR(fam.member.total_mass(), 1.0, 1e-15);
    const double z = 0.1 * std::exp(3.4) + 0.2 * std::exp(-1.7) + 0.7 * std::exp(0.85);
    EXPECT_NEAR(fam.log_partition, std::log(z), 1e-14);
    EXPECT_NEAR(fam.member[0], 0.1 * std::exp(3.4) / z, 1e-15);
}

TEST(Lottery, FairCoinExpectationIsTheTruncation)
{
    for (int n = 1; n <= 40; ++n) {
        const auto rep = st_petersburg_report({n, 0.5, 2.0}, {});
        EXPECT_EQ(rep.expectation_raw, static_cast<double>(n)) << "N = " << n;
    }
}

TEST(Lottery, BiasedCoinGeometricSeries)
{
    // sum_{n<=N} (1/4)^{n-1} (3/4) 2^n = 3 (1 - 2^{-N}).
    for (int n : {5, 20, 40}) {
        const auto rep = st_petersburg_report({n, 0.75, 2.0}, {});
        EXPECT_NEAR(rep.expectation_raw, 3.0 * (1.0 - std::pow(0.5, n)), 1e-12);
        EXPECT_NEAR(rep.defect_mass, std::pow(0.25, n), 1e-300);
    }
}

TEST(Lottery, PsiDomainProbe)
{
    const auto rep = st_petersburg_report({40, 0.5, 2.0}, {-1.0, -0.1, -0.01, 0.0, 0.01});
    for (const auto& e : rep.psi_table) {
        if (e.beta > 0.0)
            EXPECT_EQ(e.verdict, PsiVerdict::divergent) << "beta " << e.beta;
        else
            EXPECT_EQ(e.verdict, PsiVerdict::convergent) << "beta " << e.beta;
    }
    EXPECT_EQ(rep.psi_table.size(), 2u * 5u * 3u);
}

TEST(Lottery, Validation)
{
    EXPECT_THROW(st_petersburg_report({0, 0.5, 2.0}, {}), DomainError);
    EXPECT_THROW(st_petersburg_report({61, 0.5, 2.0}, {}), SizeLimitExceeded);
    EXPECT_THROW(st_petersburg_report({10, 1.0, 2.0}, {}), DomainError);
}

TEST(Channel, HammingTiltIsBinomialByEnumeration)
{
    const int l = 3;
    const auto seq = sequence_space(l, 2);
    const auto n = seq->size();
    const ProbabilityMeasure u(Measure(seq, std::vector<double>(n, 1.0 / n)));
    const auto cost = hamming_cost(l, 2);
    for (double beta : {0.5, 1.0, 2.0}) {
        const auto fam = tilt(-cost, product_measure(u, u), beta);
        const auto hist = histogram(cost, fam.member);
        const double p = std::exp(-beta) / (1.0 + std::exp(-beta));
        ASSERT_EQ(hist.size(), 4u);
        for (int k = 0; k <= l; ++k)
            EXPECT_NEAR(hist.at(k), oracle::binomial_pmf(l, k, p), 1e-12) << "beta " << beta << " k " << k;
    }
}

TEST(Channel, BudgetIsMetAndCostDecreases)
{
    const auto seq = sequence_space(3, 2);
    const ProbabilityMeasure u(Measure(seq, std::vector<double>(8, 0.125)));
    const auto cost = hamming_cost(3, 2);
    double previous = inf;
    for (double lambda : {0.05, 0.2, 0.8, 1.5}) {
        const auto sol = solve_channel(-cost, u, u, lambda);
        EXPECT_NEAR(sol.divergence, lambda, 1e-10);
        // The marginals of the tilt stay uniform by symmetry, so the
        // divergence is the mutual information.
        EXPECT_NEAR(mutual_information(sol.joint, u, u), lambda, 1e-9);
        EXPECT_LT(-sol.expected_utility, previous);
        previous = -sol.expected_utility;
    }
}

TEST(Channel, GaussianShapeOnAGrid)
{
    std::vector<double> grid;
    for (int i = -10; i <= 10; ++i)
        grid.push_back(0.2 * i);
    const auto cost = squared_euclidean_cost(grid);
    const auto sp = grid_space(grid);
    const ProbabilityMeasure u(Measure(sp, std::vector<double>(grid.size(), 1.0 / grid.size())));
    const double beta = 3.0;
    const auto fam = tilt(-cost, product_measure(u, u), beta);
    // Conditional log-odds along a row are quadratic in the displacement.
    const std::size_t n = grid.size(), row = 7;
    for (std::size_t j = 1; j < n; ++j) {
        const double a = grid[row];
        const double lhs = std::log(fam.member[row * n + j] / fam.member[row * n + j - 1]);
        const double rhs = -beta * ((a - grid[j]) * (a - grid[j]) - (a - grid[j - 1]) * (a - grid[j - 1]));
        EXPECT_NEAR(lhs, rhs, 1e-10);
    }
}

TEST(MutualInformation, ProductAndDiagonal)
{
    const ProbabilityMeasure q({0.5, 0.5});
    EXPECT_NEAR(mutual_information(product_measure(q, q), q, q), 0.0, 1e-15);
    const Measure diag(product_space(*q.space(), *q.space()), {0.5, 0.0, 0.0, 0.5});
    EXPECT_NEAR(mutual_information(diag, q, q), std::log(2.0), 1e-15);
    const Measure skew(diag.space(), {0.7, 0.1, 0.1, 0.1});
    EXPECT_THROW(mutual_information(skew, q, q), MarginalMismatch);
}

TEST(SequenceSpace, LabelsAndLimits)
{
    const auto s = sequence_space(3, 2);
    EXPECT_EQ(s->label(5), "101");
    EXPECT_EQ(hamming_cost(3, 2)[5 * 8 + 2], 3.0); // 101 vs 010
    EXPECT_THROW(sequence_space(11, 2), SizeLimitExceeded);
}
