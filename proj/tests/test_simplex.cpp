#include <asymgeo/simplex.hpp>
#include <asymgeo/verify.hpp>

#include <gtest/gtest.h>

using namespace asymgeo;

TEST(Simplex, TextbookMaximum)
{
    LinearProgram lp;
    lp.objective = {1.0, 1.0};
    lp.add_row({1.0, 2.0}, Relation::less_equal, 4.0);
    lp.add_row({3.0, 1.0}, Relation::less_equal, 6.0);
    const auto r = solve_lp(lp);
    ASSERT_EQ(r.status, LpStatus::optimal);
    EXPECT_NEAR(r.value, 14.0 / 5.0, 1e-12);
    EXPECT_NEAR(r.x[0], 8.0 / 5.0, 1e-12);
    EXPECT_NEAR(r.x[1], 6.0 / 5.0, 1e-12);
}

TEST(Simplex, EqualityAndGreaterEqualRowsNeedPhaseOne)
{
    // max -x - y  s.t. x + y = 3, x >= 1, y >= 0.5  ->  -3.
    LinearProgram lp;
    lp.objective = {-1.0, -1.0};
    lp.add_row({1.0, 1.0}, Relation::equal, 3.0);
    lp.add_row({1.0, 0.0}, Relation::greater_equal, 1.0);
    lp.add_row({0.0, 1.0}, Relation::greater_equal, 0.5);
    const auto r = solve_lp(lp);
    ASSERT_EQ(r.status, LpStatus::optimal);
    EXPECT_NEAR(r.value, -3.0, 1e-12);
}

TEST(Simplex, NegativeRightHandSide)
{
    // -x <= -2 is x >= 2; max -x gives -2.
    LinearProgram lp;
    lp.objective = {-1.0};
    lp.add_row({-1.0}, Relation::less_equal, -2.0);
    const auto r = solve_lp(lp);
    ASSERT_EQ(r.status, LpStatus::optimal);
    EXPECT_NEAR(r.value, -2.0, 1e-12);
}

TEST(Simplex, DetectsInfeasibleAndUnbounded)
{
    LinearProgram inf_lp;
    inf_lp.objective = {1.0};
    inf_lp.add_row({1.0}, Relation::greater_equal, 2.0);
    inf_lp.add_row({1.0}, Relation::less_equal, 1.0);
    EXPECT_EQ(solve_lp(inf_lp).status, LpStatus::infeasible);

    LinearProgram unb;
    unb.objective = {1.0, 0.0};
    unb.add_row({1.0, -1.0}, Relation::less_equal, 1.0);
    EXPECT_EQ(solve_lp(unb).status, LpStatus::unbounded);
}

TEST(Simplex, BealeCyclingExampleTerminates)
{
    // Cycles under the textbook largest-coefficient rule; Bland's rule must
    // reach the optimum 1/20.
    LinearProgram lp;
    lp.objective = {0.75, -150.0, 0.02, -6.0};
    lp.add_row({0.25, -60.0, -0.04, 9.0}, Relation::less_equal, 0.0);
    lp.add_row({0.5, -90.0, -0.02, 3.0}, Relation::less_equal, 0.0);
    lp.add_row({0.0, 0.0, 1.0, 0.0}, Relation::less_equal, 1.0);
    const auto r = solve_lp(lp);
    ASSERT_EQ(r.status, LpStatus::optimal);
    EXPECT_NEAR(r.value, 0.05, 1e-12);
}

TEST(Simplex, AgreesWithVertexEnumerationIn2D)
{
    // Oracle: best objective over all pairwise intersections of the
    // constraint lines and the axes that satisfy every constraint.
    Rng rng(17);
    for (int t = 0; t < 200; ++t) {
        const int m = uniform_int(rng, 1, 6);
        std::vector<std::array<double, 3>> lines; // a x + b y = c
        LinearProgram lp;
        lp.objective = {uniform(rng, -1, 2), uniform(rng, -1, 2)};
        for (int k = 0; k < m; ++k) {
            const double a = uniform(rng, 0.1, 2), b = uniform(rng, 0.1, 2), c = uniform(rng, 0.5, 3);
            lp.add_row({a, b}, Relation::less_equal, c);
            lines.push_back({a, b, c});
        }
        lines.push_back({1.0, 0.0, 0.0});
        lines.push_back({0.0, 1.0, 0.0});
        double best = -inf;
        for (std::size_t i = 0; i < lines.size(); ++i)
            for (std::size_t j = i + 1; j < lines.size(); ++j) {
                const auto& p = lines[i];
                const auto& q = lines[j];
                const double det = p[0] * q[1] - p[1] * q[0];
                if (std::abs(det) < 1e-12)
                    continue;
                const double x = (p[2] * q[1] - p[1] * q[2]) / det;
                const double y = (p[0] * q[2] - p[2] * q[0]) / det;
                bool ok = x >= -1e-12 && y >= -1e-12;
                for (const auto& row : lp.rows)
                    ok = ok && row.coeffs[0] * x + row.coeffs[1] * y <= row.rhs + 1e-12;
                if (ok)
                    best = std::max(best, lp.objective[0] * x + lp.objective[1] * y);
            }
        const auto r = solve_lp(lp);
        ASSERT_EQ(r.status, LpStatus::optimal);
        EXPECT_NEAR(r.value, best, 1e-10);
    }
}

TEST(Simplex, PivotLimitIsEnforced)
{
    LinearProgram lp;
    lp.objective = {1.0, 1.0, 1.0};
    lp.add_row({1.0, 1.0, 1.0}, Relation::less_equal, 1.0);
    lp.add_row({1.0, 0.0, 0.0}, Relation::greater_equal, 0.1);
    LpOptions opt;
    opt.max_pivots = 0;
    EXPECT_THROW(solve_lp(lp, opt), LpIterationLimit);
}
