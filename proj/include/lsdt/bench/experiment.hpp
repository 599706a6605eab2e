#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "lsdt/bench/config.hpp"
#include "lsdt/bench/stats.hpp"
#include "lsdt/graph.hpp"
#include "lsdt/policy_factory.hpp"
#include "lsdt/random.hpp"
#include "lsdt/reward_models.hpp"
#include "lsdt/side_info.hpp"
#include "lsdt/uig.hpp"

namespace lsdt {

inline std::vector<double> generate_means(const ExperimentConfig& config, RandomStream& rng) {
    const auto& g = config.mean_generator;
    switch (g.type) {
        case MeanGenerator::Type::Uniform: {
            std::vector<double> means(config.K);
            for (auto& m : means) m = g.lo + (g.hi - g.lo) * rng.uniform01();
            return means;
        }
        case MeanGenerator::Type::Explicit:
            return g.means;
        case MeanGenerator::Type::Clustered: {
            std::vector<double> means;
            for (double c : g.centers) means.insert(means.end(), g.per_class, c);
            return means;
        }
    }
    throw std::logic_error("generate_means: unknown generator");
}

struct GeneratedInstance {
    BanditInstance instance;
    Uig uig;
};

inline GeneratedInstance generate_instance(const ExperimentConfig& config, RandomStream& rng) {
    const auto means = generate_means(config, rng);
    auto instance = config.distribution == DistributionKind::Bernoulli
                        ? BanditInstance::bernoulli(means, config.epsilon)
                        : BanditInstance::gaussian(means, config.epsilon, config.sigma);
    auto uig = build_uig(instance);
    return {std::move(instance), std::move(uig)};
}

/// Side products for the requested policies. Partial mode reveals from `rng`;
/// complete mode uses the full UIG for both product kinds.
inline SideProducts prepare_side_products(const ExperimentConfig& config, const Uig& uig, RandomStream& rng) {
    bool want_candidates = false, want_partial = false;
    for (const auto& p : config.policies) {
        want_candidates = want_candidates || needs_candidates(p);
        want_partial = want_partial || needs_partial(p);
    }
    SideProducts side;
    if (config.side_mode.partial) {
        const auto sig = reveal(uig, {config.side_mode.p_similar, config.side_mode.p_dissimilar, 1.0}, rng);
        if (want_partial) side.partial = partial_products(sig);
    } else {
        if (want_candidates) side.candidates = left_anchor_candidate_set(uig);
        if (want_partial) side.partial = partial_products(SideInfoGraph::complete(uig));
    }
    return side;
}

/// Cumulative pseudo-regret after each step; entry t-1 covers steps 1..t.
struct RegretTrace {
    std::string policy;
    std::size_t replication = 0;
    std::vector<double> cumulative;
};

/// Runs steps 1..T. Rewards come from `rng`; regret accumulates the gap of
/// each chosen arm, so it depends only on the arm sequence.
inline std::vector<double> run_episode(const BanditInstance& instance, Policy& policy, std::size_t horizon,
                                       RandomStream& rng) {
    std::vector<double> cumulative;
    cumulative.reserve(horizon);
    double total = 0.0;
    for (std::size_t t = 1; t <= horizon; ++t) {
        const ArmId arm = policy.select(t);
        const double reward = instance.pull(arm, rng);
        policy.update(arm, reward, t);
        total += instance.gaps()[arm];
        cumulative.push_back(total);
    }
    return cumulative;
}

struct RegretSummaryRow {
    std::string policy;
    std::size_t t = 0;
    MeanCi stats;
};

struct MonteCarloResult {
    std::vector<std::string> policies;
    std::vector<std::vector<RegretTrace>> traces;  // [policy][replication]
    std::vector<RegretSummaryRow> summary;         // policy-major, t ascending

    MeanCi final_regret(std::size_t policy_index) const {
        std::vector<double> v;
        for (const auto& tr : traces[policy_index]) v.push_back(tr.cumulative.back());
        return mean_ci(v);
    }
};

/// Worker count: BENCH_THREADS if set and positive, else hardware concurrency.
inline std::size_t bench_threads() {
    if (const char* env = std::getenv("BENCH_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return std::max(1U, std::thread::hardware_concurrency());
}

/// Calls job(r) for r in [0, count) on up to `threads` workers. The first
/// exception thrown by any job is rethrown after all workers stop.
template <class Job>
void parallel_for(std::size_t count, std::size_t threads, Job job) {
    threads = std::max<std::size_t>(1, std::min(threads, count));
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        while (true) {
            const std::size_t r = next.fetch_add(1);
            if (r >= count) return;
            try {
                job(r);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(count);
            }
        }
    };
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (error) std::rethrow_exception(error);
}

/// Seed layout: the instance and its revealed side information for
/// replication r come from derive_seed(seed, r, 0) (r = 0 for every
/// replication when fixed_instance is set); policy p of replication r draws
/// rewards from derive_seed(seed, r, p + 1) and seeds its own randomness
/// from derive_seed(that, 1).
inline MonteCarloResult monte_carlo(const ExperimentConfig& config) {
    config.validate();
    const std::size_t np = config.policies.size();
    MonteCarloResult result;
    result.policies = config.policies;
    result.traces.assign(np, std::vector<RegretTrace>(config.replications));

    parallel_for(config.replications, bench_threads(), [&](std::size_t r) {
        RandomStream instance_rng(derive_seed(config.seed, config.fixed_instance ? 0 : r, 0));
        const auto gen = generate_instance(config, instance_rng);
        const auto side = prepare_side_products(config, gen.uig, instance_rng);
        for (std::size_t p = 0; p < np; ++p) {
            const auto stream_seed = derive_seed(config.seed, r, p + 1);
            RandomStream reward_rng(stream_seed);
            auto policy = make_policy(config.policies[p], config.K, config.T, config.epsilon, side, config.params,
                                      derive_seed(stream_seed, 1));
            result.traces[p][r] = {config.policies[p], r, run_episode(gen.instance, *policy, config.T, reward_rng)};
        }
    });

    std::vector<double> column(config.replications);
    for (std::size_t p = 0; p < np; ++p)
        for (std::size_t t = 0; t < config.T; ++t) {
            for (std::size_t r = 0; r < config.replications; ++r) column[r] = result.traces[p][r].cumulative[t];
            result.summary.push_back({config.policies[p], t + 1, mean_ci(column)});
        }
    return result;
}

}  // namespace lsdt
