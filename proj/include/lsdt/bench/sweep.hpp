#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "lsdt/bench/experiment.hpp"
#include "lsdt/bench/stats.hpp"
#include "lsdt/random.hpp"
#include "lsdt/side_info.hpp"
#include "lsdt/uig.hpp"

namespace lsdt {

/// |B*| of the UIG over `means`, or |B0| after a random partial reveal.
inline std::size_t candidate_size(std::span<const double> means, double epsilon,
                                  const std::optional<RevealModel>& reveal_model, RandomStream& rng) {
    const auto uig = build_uig(means, epsilon);
    if (!reveal_model) return left_anchor_candidate_set(uig).candidate_set.size();
    return triangle_eliminate(reveal(uig, *reveal_model, rng)).size();
}

struct SweepSpec {
    enum class Axis { Epsilon, K, P };
    bool partial = false;
    Axis axis = Axis::Epsilon;
    std::vector<double> grid;
    std::size_t K = 100;
    double epsilon = 0.2;
    double p_similar = 0.8;  // the P axis sets both probabilities
    double p_dissimilar = 0.8;
    double lo = 0.0, hi = 1.0;
    std::size_t replications = 100;
    std::uint64_t seed = 1;
};

struct SizeRow {
    double x = 0.0;
    MeanCi stats;
};

/// Replication r draws its means from derive_seed(seed, r, 0) at every grid
/// point (common instances across an epsilon or p sweep) and its reveal from
/// derive_seed(seed, r, g + 1).
inline std::vector<SizeRow> sweep_candidate_size(const SweepSpec& spec) {
    if (spec.replications == 0) throw std::invalid_argument("sweep: replications must be at least 1");
    if (!(spec.lo <= spec.hi)) throw std::invalid_argument("sweep: need lo <= hi");
    std::vector<SizeRow> rows;
    for (std::size_t g = 0; g < spec.grid.size(); ++g) {
        const double x = spec.grid[g];
        std::size_t k = spec.K;
        double eps = spec.epsilon;
        RevealModel model{spec.p_similar, spec.p_dissimilar, 1.0};
        switch (spec.axis) {
            case SweepSpec::Axis::Epsilon: eps = x; break;
            case SweepSpec::Axis::K:
                if (!(x >= 1.0)) throw std::invalid_argument("sweep: K grid values must be at least 1");
                k = static_cast<std::size_t>(x);
                break;
            case SweepSpec::Axis::P: model.p_similar = model.p_dissimilar = x; break;
        }
        std::vector<double> sizes(spec.replications);
        parallel_for(spec.replications, bench_threads(), [&](std::size_t r) {
            RandomStream mean_rng(derive_seed(spec.seed, r, 0));
            std::vector<double> means(k);
            for (auto& m : means) m = spec.lo + (spec.hi - spec.lo) * mean_rng.uniform01();
            RandomStream reveal_rng(derive_seed(spec.seed, r, g + 1));
            const auto reveal_model = spec.partial ? std::optional<RevealModel>(model) : std::nullopt;
            sizes[r] = static_cast<double>(candidate_size(means, eps, reveal_model, reveal_rng));
        });
        rows.push_back({x, mean_ci(sizes)});
    }
    return rows;
}

}  // namespace lsdt
