#pragma once

#include <optional>
#include <vector>

#include "lsdt/bench/stats.hpp"
#include "lsdt/offline/ratings.hpp"
#include "lsdt/policy.hpp"
#include "lsdt/random.hpp"

namespace lsdt {

struct ReplayResult {
    std::optional<double> average;  // empty when no event matched
    double ci95 = 0.0;
    std::size_t matched = 0;
    std::size_t scanned = 0;
};

/**
 * Matching replay over a shuffled copy of `events`. For each event the
 * policy proposes an arm for the next step; on a match with the logged item
 * the normalized rating is the reward and the step completes, otherwise the
 * event is dropped. Stops after `t_max` matches or at the end of the stream.
 * Unbiased when items were logged uniformly at random.
 */
inline ReplayResult replay_evaluate(Policy& policy, std::vector<Rating> events, std::size_t t_max,
                                    RandomStream& rng) {
    shuffle(events.begin(), events.end(), rng);
    ReplayResult out;
    std::vector<double> rewards;
    for (const auto& e : events) {
        if (out.matched >= t_max) break;
        ++out.scanned;
        const std::size_t t = out.matched + 1;
        if (policy.select(t) != e.item) continue;
        policy.update(e.item, e.value, t);
        rewards.push_back(e.value);
        ++out.matched;
    }
    if (!rewards.empty()) {
        const auto s = mean_ci(rewards);
        out.average = s.mean;
        out.ci95 = s.ci95;
    }
    return out;
}

}  // namespace lsdt
