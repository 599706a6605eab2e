#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "lsdt/exploration.hpp"
#include "lsdt/lower_bound.hpp"
#include "lsdt/lp.hpp"
#include "lsdt/random.hpp"
#include "oracles.hpp"

using namespace lsdt;

namespace {

Graph cycle(std::size_t n) {
    Graph g(n);
    for (ArmId i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    return g;
}

Graph star(std::size_t leaves) {
    Graph g(leaves + 1);
    for (ArmId i = 1; i <= leaves; ++i) g.add_edge(0, i);
    return g;
}

Graph complete(std::size_t n) {
    Graph g(n);
    for (ArmId i = 0; i < n; ++i)
        for (ArmId j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

LinearProgram random_lp(RandomStream& rng) {
    const std::size_t n = 1 + rng.below(6), m = 1 + rng.below(8);
    LinearProgram lp;
    for (std::size_t j = 0; j < n; ++j) lp.objective.push_back(0.1 + rng.uniform01());
    for (std::size_t r = 0; r < m; ++r) {
        std::vector<double> row(n);
        for (auto& v : row) v = std::round((rng.uniform01() * 4.0 - 1.0) * 4) / 4;  // some zeros and negatives
        lp.add_constraint(std::move(row), std::round((rng.uniform01() * 4.0 - 1.0) * 4) / 4);
    }
    return lp;
}

}  // namespace

TEST(SolveLp, SingleBound) {
    LinearProgram lp;
    lp.objective = {1.0};
    lp.add_constraint({1.0}, 3.0);
    const auto s = solve_lp(lp);
    ASSERT_EQ(s.status, LpStatus::Optimal);
    EXPECT_NEAR(s.x[0], 3.0, 1e-12);
    EXPECT_NEAR(s.objective, 3.0, 1e-12);
}

TEST(SolveLp, InfeasibleAndUnbounded) {
    LinearProgram infeasible;
    infeasible.objective = {1.0};
    infeasible.add_constraint({-1.0}, 1.0);  // -x >= 1 with x >= 0
    EXPECT_EQ(solve_lp(infeasible).status, LpStatus::Infeasible);

    LinearProgram unbounded;
    unbounded.objective = {-1.0, 0.0};
    unbounded.add_constraint({1.0, -1.0}, 0.0);
    EXPECT_EQ(solve_lp(unbounded).status, LpStatus::Unbounded);
}

TEST(SolveLp, RejectsMalformedInput) {
    LinearProgram lp;
    lp.objective = {1.0, 1.0};
    lp.add_constraint({1.0}, 1.0);
    EXPECT_THROW(solve_lp(lp), std::invalid_argument);
    LinearProgram nan;
    nan.objective = {std::nan("")};
    EXPECT_THROW(solve_lp(nan), std::invalid_argument);
}

TEST(SolveLp, DegenerateAndRedundantRows) {
    LinearProgram lp;
    lp.objective = {1.0, 1.0};
    lp.add_constraint({1.0, 1.0}, 1.0);
    lp.add_constraint({1.0, 1.0}, 1.0);  // duplicate
    lp.add_constraint({2.0, 2.0}, 2.0);  // scaled duplicate
    lp.add_constraint({1.0, 0.0}, 0.0);
    const auto s = solve_lp(lp);
    ASSERT_EQ(s.status, LpStatus::Optimal);
    EXPECT_NEAR(s.objective, 1.0, 1e-12);
    EXPECT_LE(max_violation(lp, s.x), 1e-9);
}

TEST(SolveLp, MatchesVertexEnumeration) {
    RandomStream rng(17);
    int optimal = 0, infeasible = 0;
    for (int rep = 0; rep < 300; ++rep) {
        const auto lp = random_lp(rng);
        const auto s = solve_lp(lp);
        const auto expected = oracle::vertex_enumeration(lp.objective, lp.lhs, lp.rhs);
        if (expected) {
            ++optimal;
            ASSERT_EQ(s.status, LpStatus::Optimal) << "rep " << rep;
            EXPECT_NEAR(s.objective, *expected, 1e-9) << "rep " << rep;
            EXPECT_LE(max_violation(lp, s.x), 1e-9);
        } else {
            ++infeasible;
            EXPECT_EQ(s.status, LpStatus::Infeasible) << "rep " << rep;
        }
    }
    EXPECT_GT(optimal, 100);
    EXPECT_GT(infeasible, 0);
}

TEST(ExplorationValues, PathCycleStarCompleteEdgeless) {
    Graph path(3);
    path.add_edge(0, 1);
    path.add_edge(1, 2);
    EXPECT_NEAR(exploration_values(path).total, 1.0, 1e-9);

    const auto c5 = exploration_values(cycle(5));
    EXPECT_NEAR(c5.total, 5.0 / 3.0, 1e-9);
    for (double z : c5.z) EXPECT_NEAR(z, 1.0 / 3.0, 1e-9);

    const auto s = exploration_values(star(4));
    EXPECT_NEAR(s.total, 1.0, 1e-9);
    EXPECT_NEAR(s.z[0], 1.0, 1e-9);

    EXPECT_NEAR(exploration_values(complete(6)).total, 1.0, 1e-9);
    const auto e = exploration_values(Graph(4));
    EXPECT_NEAR(e.total, 4.0, 1e-9);
    for (double z : e.z) EXPECT_NEAR(z, 1.0, 1e-9);
    EXPECT_THROW(exploration_values(Graph(0)), std::invalid_argument);
}

TEST(ExplorationValues, CoverFeasibleAndBelowDominatingSet) {
    RandomStream rng(23);
    for (int rep = 0; rep < 60; ++rep) {
        const std::size_t n = 1 + rng.below(12);
        Graph g(n);
        for (ArmId i = 0; i < n; ++i)
            for (ArmId j = i + 1; j < n; ++j)
                if (rng.bernoulli(0.3)) g.add_edge(i, j);
        const auto ev = exploration_values(g);
        for (ArmId i = 0; i < n; ++i) {
            double cover = ev.z[i];
            for (ArmId j : g.neighbors(i)) cover += ev.z[j];
            EXPECT_GE(cover, 1.0 - 1e-9);
            EXPECT_GE(ev.z[i], 0.0);
            EXPECT_LE(ev.z[i], 1.0 + 1e-9);
        }
        const auto gamma = min_dominating_set_size(g);
        EXPECT_TRUE(gamma.exact);
        EXPECT_LE(ev.total, static_cast<double>(gamma.size) + 1e-9);
    }
}

TEST(DominatingSet, Cases) {
    EXPECT_EQ(min_dominating_set_size(star(4)).size, 1U);
    EXPECT_EQ(min_dominating_set_size(Graph(5)).size, 5U);
    EXPECT_EQ(min_dominating_set_size(cycle(5)).size, 2U);
    const auto big = min_dominating_set_size(cycle(30));
    EXPECT_FALSE(big.exact);
    EXPECT_GE(big.size, 10U);  // gamma(C_n) = ceil(n / 3)
}

TEST(KlDivergence, ClosedForms) {
    EXPECT_DOUBLE_EQ(kl_divergence(RewardDistribution::gaussian(0.0), RewardDistribution::gaussian(2.0)), 2.0);
    EXPECT_EQ(kl_divergence(RewardDistribution::gaussian(0.3), RewardDistribution::gaussian(0.3)), 0.0);
    EXPECT_NEAR(kl_divergence(RewardDistribution::bernoulli(0.5), RewardDistribution::bernoulli(0.25)), 0.143841036,
                1e-8);
    EXPECT_EQ(kl_divergence(RewardDistribution::bernoulli(0.4), RewardDistribution::bernoulli(0.4)), 0.0);
    EXPECT_THROW(kl_divergence(RewardDistribution::bernoulli(0.0), RewardDistribution::bernoulli(0.5)),
                 std::invalid_argument);
    EXPECT_THROW(kl_divergence(RewardDistribution::gaussian(0.0), RewardDistribution::bernoulli(0.5)),
                 std::invalid_argument);
    // Unequal variances: ln(s2/s1) + (s1^2 + d^2) / (2 s2^2) - 1/2.
    EXPECT_NEAR(kl_divergence(RewardDistribution::gaussian(0.0, 1.0), RewardDistribution::gaussian(1.0, 2.0)),
                std::log(2.0) + 2.0 / 8.0 - 0.5, 1e-12);
}

TEST(KlDivergence, NonNegativeZeroOnlyWhenEqual) {
    RandomStream rng(3);
    for (int i = 0; i < 200; ++i) {
        const double p = 0.01 + 0.98 * rng.uniform01(), q = 0.01 + 0.98 * rng.uniform01();
        const double kl = kl_divergence(RewardDistribution::bernoulli(p), RewardDistribution::bernoulli(q));
        EXPECT_GT(kl, 0.0);
    }
}

TEST(LowerBound, ThreeArmGaussian) {
    const auto inst = BanditInstance::gaussian(std::vector<double>{0.0, 0.5, 1.0}, 0.6);
    const auto alt = alternative_means(inst, {2}, {0});
    EXPECT_DOUBLE_EQ(alt[0], 2.0);
    EXPECT_DOUBLE_EQ(alt[1], 1.5);
    EXPECT_DOUBLE_EQ(alt[2], 1.0);
    const double c1 = lower_bound_constant(inst);
    EXPECT_NEAR(c1, 0.5, 1e-12);
    // Same program by vertex enumeration: min tau0 + 0.5 tau1 s.t. 2 tau0 + 0.5 tau1 >= 1.
    EXPECT_NEAR(*oracle::vertex_enumeration({1.0, 0.5, 0.0}, {{2.0, 0.5, 0.0}}, {1.0}), c1, 1e-12);
}

TEST(LowerBound, SingleConstraintAndAllOptimal) {
    // One non-top arm j: C1 = gap_j / I(theta_j || theta'_j) = 1 / ((0 - 2)^2 / 2).
    const auto two = BanditInstance::gaussian(std::vector<double>{0.0, 1.0}, 0.5);
    EXPECT_NEAR(lower_bound_constant(two), 0.5, 1e-12);
    const auto flat = BanditInstance::gaussian(std::vector<double>{0.2, 0.2}, 0.5);
    EXPECT_EQ(lower_bound_constant(flat), 0.0);
}

TEST(LowerBound, TranslationInvariantForGaussians) {
    RandomStream rng(41);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<double> mu(7), shifted(7);
        for (auto& m : mu) m = rng.uniform01();
        for (std::size_t i = 0; i < mu.size(); ++i) shifted[i] = mu[i] + 3.25;
        const double eps = 0.2 + 0.3 * rng.uniform01();
        const double a = lower_bound_constant(BanditInstance::gaussian(mu, eps));
        const double b = lower_bound_constant(BanditInstance::gaussian(shifted, eps));
        EXPECT_NEAR(a, b, 1e-9 * std::max(1.0, a));
    }
}

TEST(LowerBound, TopClassArmsNeedTheirOwnSamples) {
    // 0.9 and 1.0 share a class; the 0.9 arm gets tau >= 1 / I(0.9 || 1.0) = 200.
    const auto inst = BanditInstance::gaussian(std::vector<double>{0.0, 0.5, 0.9, 1.0}, 0.55);
    const double c1 = lower_bound_constant(inst);
    EXPECT_GE(c1, 0.1 * 200.0 - 1e-9);
}
