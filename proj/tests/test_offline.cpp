#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "lsdt/offline/estimation.hpp"
#include "lsdt/offline/ratings.hpp"
#include "lsdt/offline/replay.hpp"
#include "lsdt/policy.hpp"

using namespace lsdt;

namespace {

RatingsTable parse(const std::string& text, RatingBounds b = {}) {
    std::istringstream in(text);
    return ingest_ratings(in, b);
}

class FixedArm : public Policy {
public:
    FixedArm(std::size_t k, ArmId arm) : Policy(k), arm_(arm) {}
    std::string name() const override { return "fixed"; }

protected:
    ArmId choose(std::size_t) override { return arm_; }
    void observe(ArmId, double, std::size_t) override {}

private:
    ArmId arm_;
};

// Distances |mu_i - mu_j| for every pair, as if every user rated every item.
PairDistances line_distances(const std::vector<double>& mu) {
    PairDistances d(mu.size());
    for (ArmId i = 0; i < mu.size(); ++i)
        for (ArmId j = i + 1; j < mu.size(); ++j) d.set(i, j, std::abs(mu[i] - mu[j]));
    return d;
}

}  // namespace

TEST(Ratings, NormalizationRoundTrip) {
    RatingBounds b;
    EXPECT_DOUBLE_EQ(b.normalize(0.0), 0.5);
    EXPECT_DOUBLE_EQ(b.normalize(10.0), 1.0);
    EXPECT_DOUBLE_EQ(b.normalize(-10.0), 0.0);
    EXPECT_DOUBLE_EQ(b.denormalize(b.normalize(3.7)), 3.7);
}

TEST(Ratings, IngestsAndOrdersItems) {
    const auto t = parse("user_id,item_id,rating\nu1,10,5\nu1,2,-5\nu2,10,0\n");
    ASSERT_EQ(t.items, (std::vector<std::string>{"2", "10"}));
    EXPECT_EQ(t.users, (std::vector<std::string>{"u1", "u2"}));
    ASSERT_EQ(t.ratings.size(), 3U);
    EXPECT_EQ(t.ratings[0].item, 1U);
    EXPECT_DOUBLE_EQ(t.ratings[0].value, 0.75);
    const auto means = t.item_means();
    EXPECT_DOUBLE_EQ(means[0], 0.25);
    EXPECT_DOUBLE_EQ(means[1], 0.625);
}

TEST(Ratings, RejectsMalformedInput) {
    EXPECT_THROW(parse(""), std::runtime_error);
    EXPECT_THROW(parse("user_id,item_id,rating\n"), std::runtime_error);
    EXPECT_THROW(parse("user,item,rating\nu,i,1\n"), std::runtime_error);
    EXPECT_THROW(parse("user_id,item_id,rating\nu,i\n"), std::runtime_error);
    EXPECT_THROW(parse("user_id,item_id,rating\nu,i,abc\n"), std::runtime_error);
    EXPECT_THROW(parse("user_id,item_id,rating\nu,i,11\n"), std::runtime_error);
    EXPECT_THROW(parse("user_id,item_id,rating\nu,i,1\nu,i,2\n"), std::runtime_error);
    EXPECT_THROW(parse("user_id,item_id,rating\nu,i,1\n", {1.0, 1.0}), std::invalid_argument);
}

TEST(Split, DeterministicAndExhaustive) {
    std::string text = "user_id,item_id,rating\n";
    for (int u = 0; u < 200; ++u) text += "u" + std::to_string(u) + ",1," + std::to_string(u % 7) + "\n";
    const auto table = parse(text);
    const auto a = split_ratings(table, 0.3, 5);
    const auto b = split_ratings(table, 0.3, 5);
    EXPECT_EQ(a.train.users, b.train.users);
    EXPECT_EQ(a.train.users.size() + a.test.users.size(), 200U);
    EXPECT_EQ(a.train.ratings.size() + a.test.ratings.size(), 200U);
    EXPECT_GT(a.train.users.size(), 30U);
    EXPECT_LT(a.train.users.size(), 90U);
    EXPECT_FALSE(a.warning.has_value());
    EXPECT_NE(split_ratings(table, 0.3, 6).train.users, a.train.users);
}

TEST(Split, SingleUserWarns) {
    const auto table = parse("user_id,item_id,rating\nonly,1,1\nonly,2,2\n");
    const auto s = split_ratings(table, 0.5, 1);
    EXPECT_TRUE(s.warning.has_value());
    EXPECT_EQ(s.train.users.size() + s.test.users.size(), 1U);
}

TEST(Estimation, CoRatingDistances) {
    // Item a: u1 10, u2 0. Item b: u1 0. Item c: u3 only.
    const auto t = parse("user_id,item_id,rating\nu1,a,10\nu2,a,0\nu1,b,0\nu3,c,5\n");
    const auto d = co_rating_distances(t);
    ASSERT_TRUE(d.at(0, 1).has_value());
    EXPECT_DOUBLE_EQ(*d.at(0, 1), 0.5);  // only u1 co-rates: |1.0 - 0.5|
    EXPECT_FALSE(d.at(0, 2).has_value());
    EXPECT_FALSE(d.at(1, 2).has_value());
}

TEST(Estimation, ClassificationBandIsStrict) {
    PairDistances d(4);
    d.set(0, 1, 0.375);  // (1 - alpha) eps exactly
    d.set(0, 2, 0.625);  // (1 + alpha) eps exactly
    d.set(1, 2, 0.25);
    d.set(2, 3, 0.75);
    const auto e = classify_pairs(d, 0.5, 0.25);
    EXPECT_FALSE(e.side_info.known(0, 1));
    EXPECT_FALSE(e.side_info.known(0, 2));
    EXPECT_TRUE(e.side_info.similar(1, 2));
    EXPECT_TRUE(e.side_info.dissimilar(2, 3));
    EXPECT_FALSE(e.side_info.known(0, 3));  // no co-raters
    EXPECT_THROW(classify_pairs(d, 0.0, 0.25), std::invalid_argument);
    EXPECT_THROW(classify_pairs(d, 0.5, 1.0), std::invalid_argument);
}

TEST(EpsilonSearch, FlatSurvivorCountReturnsStart) {
    PairDistances none(5);  // no co-raters at all
    const auto r = epsilon_search(none, 0.2);
    EXPECT_DOUBLE_EQ(r.epsilon, 0.01);
    EXPECT_EQ(r.survivors, 5U);
}

TEST(EpsilonSearch, MatchesExhaustiveGridOnUShapedProfiles) {
    struct Design {
        std::size_t k;
        double first_gap, ratio, alpha;
    };
    // Means with slowly growing gaps: components merge gradually as eps grows.
    for (const auto& [k, first_gap, ratio, alpha] :
         {Design{10, 0.01, 1.1, 0.2}, Design{15, 0.01, 1.02, 0.2}, Design{20, 0.005, 1.05, 0.1}}) {
        std::vector<double> mu{0.1};
        double gap = first_gap;
        for (std::size_t i = 1; i < k; ++i, gap *= ratio) mu.push_back(mu.back() + gap);
        const auto d = line_distances(mu);
        std::vector<std::size_t> grid;
        for (int s = 1; s <= 100; ++s) grid.push_back(survivor_count(d, 0.01 * s, alpha));
        std::size_t turn = 0;
        while (turn + 1 < grid.size() && grid[turn + 1] <= grid[turn]) ++turn;
        ASSERT_GT(grid.front(), grid[turn]);
        for (std::size_t j = turn; j + 1 < grid.size(); ++j) ASSERT_GE(grid[j + 1], grid[j]);
        const auto best = std::min_element(grid.begin(), grid.end()) - grid.begin();
        const auto r = epsilon_search(d, alpha);
        EXPECT_NEAR(r.epsilon, 0.01 * static_cast<double>(best + 1), 1e-12) << "K = " << k;
        EXPECT_EQ(r.survivors, grid[best]);
        EXPECT_LT(r.evaluated.size(), grid.size());
    }
}

TEST(Replay, MatchingRule) {
    std::vector<Rating> events;
    for (int i = 0; i < 30; ++i) events.push_back({static_cast<std::size_t>(i), static_cast<ArmId>(i % 3), 0.1 * (i % 3)});
    FixedArm p(3, 2);
    RandomStream rng(1);
    const auto r = replay_evaluate(p, events, 100, rng);
    EXPECT_EQ(r.matched, 10U);
    EXPECT_EQ(r.scanned, 30U);
    ASSERT_TRUE(r.average.has_value());
    EXPECT_NEAR(*r.average, 0.2, 1e-12);

    FixedArm q(3, 1);
    RandomStream rng2(1);
    const auto capped = replay_evaluate(q, events, 4, rng2);
    EXPECT_EQ(capped.matched, 4U);
    EXPECT_EQ(q.steps_completed(), 4U);
}

TEST(Replay, EmptyStreamAndAdaptivePolicy) {
    FixedArm p(2, 0);
    RandomStream rng(1);
    const auto r = replay_evaluate(p, {}, 10, rng);
    EXPECT_FALSE(r.average.has_value());
    EXPECT_EQ(r.matched, 0U);

    std::vector<Rating> events;
    for (int i = 0; i < 400; ++i) events.push_back({0, static_cast<ArmId>(i % 4), i % 4 == 3 ? 1.0 : 0.0});
    Ucb1 ucb(4);
    RandomStream rng2(2);
    const auto u = replay_evaluate(ucb, events, 50, rng2);
    EXPECT_EQ(u.matched, ucb.steps_completed());
    EXPECT_GT(u.matched, 10U);
}
