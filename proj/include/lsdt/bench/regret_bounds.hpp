#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "lsdt/exploration.hpp"
#include "lsdt/policy.hpp"
#include "lsdt/reward_models.hpp"
#include "lsdt/side_info.hpp"
#include "lsdt/uig.hpp"

namespace lsdt {

/**
 * Leading log T term of the complete-information regret bound:
 *
 *   ( 32 max_{i in Bmin} gap_i / (min_{j in Bmin} gap_j - max_{k in Bmax} gap_k)^2
 *     + sum_{i in Bmax, not optimal} 32 / gap_i ) ln T
 *
 * Bmax is the anchor class holding an optimal arm, Bmin the other one. A
 * single anchor class (complete graph) keeps only the second sum. Requires a
 * connected UIG, i.e. at most two anchor classes.
 */
inline double regret_bound_csi(const BanditInstance& instance, const CandidateSetResult& candidates,
                               double horizon) {
    const auto& classes = candidates.anchor_classes;
    if (classes.empty() || classes.size() > 2)
        throw std::invalid_argument("regret_bound_csi: expects one or two anchor classes (connected UIG)");
    const auto& gap = instance.gaps();
    auto holds_optimal = [&](const std::vector<ArmId>& cls) {
        return std::any_of(cls.begin(), cls.end(), [&](ArmId a) { return gap[a] == 0.0; });
    };
    std::size_t top = classes.size();
    for (std::size_t c = 0; c < classes.size(); ++c)
        if (holds_optimal(classes[c])) top = c;
    if (top == classes.size()) throw std::invalid_argument("regret_bound_csi: no anchor class holds an optimal arm");

    const double log_t = clamped_log(horizon);
    double coefficient = 0.0;
    double max_top_gap = 0.0;
    for (ArmId a : classes[top]) {
        max_top_gap = std::max(max_top_gap, gap[a]);
        if (gap[a] > 0.0) coefficient += 32.0 / gap[a];
    }
    if (classes.size() == 2) {
        const auto& bottom = classes[1 - top];
        double min_gap = gap[bottom.front()], max_gap = gap[bottom.front()];
        for (ArmId a : bottom) {
            min_gap = std::min(min_gap, gap[a]);
            max_gap = std::max(max_gap, gap[a]);
        }
        const double separation = min_gap - max_top_gap;
        if (!(separation > 0.0)) throw std::domain_error("regret_bound_csi: zero denominator");
        coefficient += 32.0 * max_gap / (separation * separation);
    }
    return coefficient * log_t;
}

/**
 * Explicit terms of the partial-information regret bound (sigma = 1/2),
 * over B0 with similarity subgraph `sub` and exploration values `z`
 * (indexed like sub.nodes). With Q = {i : gap_i > 4 eps} and
 * hat_i = max(min_{j in N'[i]} gap_j - 3 eps, eps):
 *
 *   sum_{j not in Q, not optimal} gap_j max(8 ln T / gap_j^2, 32 z_j ln(T eps^2) / eps^2)
 *   + sum_{i in Q} gap_i z_i 32 ln(T hat_i^2) / hat_i^2
 *
 * Logarithms are clamped at 0.
 */
inline double regret_bound_psi(const BanditInstance& instance, const Subgraph& sub, const ExplorationValues& z,
                               double horizon, double epsilon) {
    if (z.z.size() != sub.nodes.size()) throw std::invalid_argument("regret_bound_psi: z does not match B0");
    const auto& gap = instance.gaps();
    double total = 0.0;
    for (std::size_t i = 0; i < sub.nodes.size(); ++i) {
        const double g = gap[sub.nodes[i]];
        if (g == 0.0) continue;
        if (g > 4.0 * epsilon) {
            double nearest = g;
            for (ArmId j : sub.graph.neighbors(i)) nearest = std::min(nearest, gap[sub.nodes[j]]);
            const double hat = std::max(nearest - 3.0 * epsilon, epsilon);
            total += g * z.z[i] * 32.0 * clamped_log(horizon * hat * hat) / (hat * hat);
        } else {
            const double own = 8.0 * clamped_log(horizon) / (g * g);
            const double shared = 32.0 * z.z[i] * clamped_log(horizon * epsilon * epsilon) / (epsilon * epsilon);
            total += g * std::max(own, shared);
        }
    }
    return total;
}

/// Membership of B0 in Q = {i : gap_i > 4 eps} with the matching hat values.
struct PsiGapTerm {
    ArmId arm;
    double hat;
};

inline std::vector<PsiGapTerm> psi_far_arms(const BanditInstance& instance, const Subgraph& sub, double epsilon) {
    const auto& gap = instance.gaps();
    std::vector<PsiGapTerm> out;
    for (std::size_t i = 0; i < sub.nodes.size(); ++i) {
        const double g = gap[sub.nodes[i]];
        if (!(g > 4.0 * epsilon)) continue;
        double nearest = g;
        for (ArmId j : sub.graph.neighbors(i)) nearest = std::min(nearest, gap[sub.nodes[j]]);
        out.push_back({sub.nodes[i], std::max(nearest - 3.0 * epsilon, epsilon)});
    }
    return out;
}

}  // namespace lsdt
