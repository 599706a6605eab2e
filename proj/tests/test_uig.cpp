#include <algorithm>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "lsdt/graph.hpp"
#include "lsdt/random.hpp"
#include "lsdt/uig.hpp"
#include "oracles.hpp"

using namespace lsdt;

namespace {

Graph path(std::size_t n) {
    Graph g(n);
    for (ArmId i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

Graph complete(std::size_t n) {
    Graph g(n);
    for (ArmId i = 0; i < n; ++i)
        for (ArmId j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

Graph from_adjacency(const std::vector<std::vector<bool>>& adj) {
    Graph g(adj.size());
    for (ArmId i = 0; i < adj.size(); ++i)
        for (ArmId j = i + 1; j < adj.size(); ++j)
            if (adj[i][j]) g.add_edge(i, j);
    return g;
}

std::vector<std::vector<ArmId>> as_arm_classes(const std::vector<std::vector<std::size_t>>& c) {
    std::vector<std::vector<ArmId>> out;
    for (const auto& cls : c) out.emplace_back(cls.begin(), cls.end());
    return out;
}

}  // namespace

TEST(BuildUig, StrictThresholdOnElevenArms) {
    const auto g = build_uig(fixtures::eleven_arm_means, fixtures::eleven_arm_epsilon);
    EXPECT_TRUE(g.has_edge(3, 4));   // |0.9 - 1.0| = 0.1
    EXPECT_FALSE(g.has_edge(0, 4));  // |0.8 - 1.0| = 0.2
    EXPECT_EQ(g.epsilon(), fixtures::eleven_arm_epsilon);
}

TEST(BuildUig, WideThresholdGivesCompleteGraph) {
    const std::vector<double> mu = {0.1, 0.5, 0.3, 0.9};
    EXPECT_TRUE(build_uig(mu, 0.81).is_complete());
    EXPECT_FALSE(build_uig(mu, 0.8).is_complete());  // equality is not an edge
}

TEST(BuildUig, EqualMeansAlwaysAdjacent) {
    const std::vector<double> mu = {0.4, 0.4};
    EXPECT_TRUE(build_uig(mu, 1e-9).has_edge(0, 1));
    EXPECT_THROW(build_uig(mu, 0.0), std::invalid_argument);
}

TEST(BuildUig, MatchesThresholdOracle) {
    RandomStream rng(8);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<double> mu(10);
        for (auto& m : mu) m = rng.uniform01();
        const double eps = 0.05 + 0.4 * rng.uniform01();
        EXPECT_EQ(static_cast<Graph>(build_uig(mu, eps)), from_adjacency(oracle::threshold_adjacency(mu, eps)));
    }
}

TEST(EquivalencePartition, ElevenArmClasses) {
    const auto p = equivalence_partition(build_uig(fixtures::eleven_arm_means, fixtures::eleven_arm_epsilon));
    const std::vector<std::vector<ArmId>> expected = {{0, 1, 2, 8}, {3, 6, 7}, {4, 5}, {9}, {10}};
    EXPECT_EQ(p.classes, expected);
    for (std::size_t c = 0; c < p.classes.size(); ++c)
        for (ArmId a : p.classes[c]) EXPECT_EQ(p.class_of[a], c);
}

TEST(EquivalencePartition, CompleteAndEdgeless) {
    EXPECT_EQ(equivalence_partition(complete(5)).classes.size(), 1U);
    EXPECT_EQ(equivalence_partition(Graph(5)).classes.size(), 5U);
}

TEST(EquivalencePartition, MatchesPairwiseOracle) {
    RandomStream rng(21);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<double> mu(12);
        for (auto& m : mu) m = std::round(rng.uniform01() * 10) / 10;  // force ties
        const double eps = 0.05 + 0.4 * rng.uniform01();
        EXPECT_EQ(equivalence_partition(build_uig(mu, eps)).classes,
                  as_arm_classes(oracle::closed_neighborhood_classes(oracle::threshold_adjacency(mu, eps))));
    }
}

TEST(ConnectedComponents, Cases) {
    EXPECT_EQ(connected_components(build_uig(fixtures::eleven_arm_means, fixtures::eleven_arm_epsilon)).size(), 1U);
    EXPECT_EQ(connected_components(Graph(4)).size(), 4U);
    Graph two(6);
    for (ArmId i = 0; i < 3; ++i)
        for (ArmId j = i + 1; j < 3; ++j) {
            two.add_edge(i, j);
            two.add_edge(i + 3, j + 3);
        }
    const auto comps = connected_components(two);
    ASSERT_EQ(comps.size(), 2U);
    EXPECT_EQ(comps[0], (std::vector<ArmId>{0, 1, 2}));
    EXPECT_EQ(comps[1], (std::vector<ArmId>{3, 4, 5}));
}

TEST(BfsLevels, PathFromEnd) {
    const auto levels = bfs_levels(path(4), 0);
    ASSERT_EQ(levels.size(), 4U);
    EXPECT_EQ(levels.back(), (std::vector<ArmId>{3}));
}

TEST(LeftAnchors, ElevenArmCandidateSet) {
    const auto g = build_uig(fixtures::eleven_arm_means, fixtures::eleven_arm_epsilon);
    const auto r = left_anchor_candidate_set(g);
    EXPECT_EQ(r.candidate_set, (std::vector<ArmId>{4, 5, 10}));
    EXPECT_EQ(r.anchor_classes, (std::vector<std::vector<ArmId>>{{4, 5}, {10}}));
    EXPECT_EQ(brute_force_left_anchors(g).anchors, r.candidate_set);
}

TEST(LeftAnchors, PathAndComplete) {
    EXPECT_EQ(left_anchor_candidate_set(path(3)).candidate_set, (std::vector<ArmId>{0, 2}));
    EXPECT_EQ(left_anchor_candidate_set(complete(4)).candidate_set, (std::vector<ArmId>{0, 1, 2, 3}));
}

TEST(LeftAnchors, DisconnectedUnionOverComponents) {
    Graph g(5);  // path 0-1-2 and edge 3-4
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(3, 4);
    EXPECT_EQ(left_anchor_candidate_set(g).candidate_set, (std::vector<ArmId>{0, 2, 3, 4}));
}

TEST(BruteForceAnchors, SmallCases) {
    EXPECT_EQ(brute_force_left_anchors(path(3)).anchors, (std::vector<ArmId>{0, 2}));
    Graph claw(4);
    for (ArmId leaf = 1; leaf < 4; ++leaf) claw.add_edge(0, leaf);
    const auto c = brute_force_left_anchors(claw);
    EXPECT_TRUE(c.anchors.empty());
    EXPECT_FALSE(c.is_uig);
    EXPECT_EQ(brute_force_left_anchors(Graph(1)).anchors, (std::vector<ArmId>{0}));
    EXPECT_THROW(brute_force_left_anchors(Graph(13)), std::invalid_argument);
}

TEST(BruteForceAnchors, AgreesWithPermutationOracle) {
    RandomStream rng(99);
    for (int rep = 0; rep < 40; ++rep) {
        const std::size_t k = 2 + rng.below(5);
        // Random graphs, UIG or not.
        std::vector<std::vector<bool>> adj(k, std::vector<bool>(k, false));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = i + 1; j < k; ++j) adj[i][j] = adj[j][i] = rng.bernoulli(0.5);
        const auto expected = oracle::permutation_left_anchors(adj);
        EXPECT_EQ(brute_force_left_anchors(from_adjacency(adj)).anchors,
                  std::vector<ArmId>(expected.begin(), expected.end()));
    }
}

TEST(LeftAnchors, RandomInstancesMatchBruteForce) {
    RandomStream rng(2);
    for (int rep = 0; rep < 200; ++rep) {
        const std::size_t k = 1 + rng.below(8);
        std::vector<double> mu(k);
        for (auto& m : mu) m = rng.uniform01();
        const double eps = 0.05 + 0.45 * rng.uniform01();
        const auto g = build_uig(mu, eps);
        ASSERT_EQ(left_anchor_candidate_set(g).candidate_set, brute_force_left_anchors(g).anchors) << "rep " << rep;
    }
}

TEST(LeftAnchors, ConnectedNonCompleteIsExtremeClasses) {
    RandomStream rng(31);
    int checked = 0;
    for (int rep = 0; rep < 300; ++rep) {
        std::vector<double> mu(15);
        for (auto& m : mu) m = rng.uniform01();
        const double eps = 0.1 + 0.3 * rng.uniform01();
        const auto g = build_uig(mu, eps);
        if (connected_components(g).size() != 1 || g.is_complete()) continue;
        ++checked;
        const auto p = equivalence_partition(g);
        const auto hi = std::max_element(mu.begin(), mu.end()) - mu.begin();
        const auto lo = std::min_element(mu.begin(), mu.end()) - mu.begin();
        std::vector<ArmId> expected = p.classes[p.class_of[hi]];
        for (ArmId a : p.classes[p.class_of[lo]]) expected.push_back(a);
        std::sort(expected.begin(), expected.end());
        EXPECT_EQ(left_anchor_candidate_set(g).candidate_set, expected);
    }
    EXPECT_GT(checked, 50);
}

TEST(LeftAnchors, ContainsOptimalArmsAndMirrorInvariant) {
    RandomStream rng(5);
    for (int rep = 0; rep < 100; ++rep) {
        std::vector<double> mu(20);
        for (auto& m : mu) m = std::round(rng.uniform01() * 20) / 20;
        const double eps = 0.05 + 0.3 * rng.uniform01();
        const auto cand = left_anchor_candidate_set(build_uig(mu, eps)).candidate_set;
        const double best = *std::max_element(mu.begin(), mu.end());
        for (ArmId i = 0; i < mu.size(); ++i)
            if (mu[i] == best) {
                EXPECT_TRUE(std::binary_search(cand.begin(), cand.end(), i));
            }
        std::vector<double> mirrored(mu.size());
        for (std::size_t i = 0; i < mu.size(); ++i) mirrored[i] = -mu[i];
        EXPECT_EQ(left_anchor_candidate_set(build_uig(mirrored, eps)).candidate_set, cand);
    }
}

TEST(EdgeList, RoundTripAndErrors) {
    const auto g = build_uig(fixtures::eleven_arm_means, fixtures::eleven_arm_epsilon);
    std::stringstream ss;
    write_edge_list(ss, g);
    EXPECT_EQ(read_edge_list(ss), static_cast<const Graph&>(g));

    std::stringstream comments("# header comment\nK 3\n\n0 1\n# mid\n1 2\n");
    EXPECT_EQ(read_edge_list(comments), path(3));

    std::stringstream bad_header("3\n0 1\n");
    EXPECT_THROW(read_edge_list(bad_header), std::runtime_error);
    std::stringstream out_of_range("K 2\n0 2\n");
    EXPECT_THROW(read_edge_list(out_of_range), std::runtime_error);
    std::stringstream self_loop("K 2\n1 1\n");
    EXPECT_THROW(read_edge_list(self_loop), std::runtime_error);
}
