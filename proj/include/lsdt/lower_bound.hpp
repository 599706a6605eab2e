#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "lsdt/lp.hpp"
#include "lsdt/reward_models.hpp"
#include "lsdt/uig.hpp"

namespace lsdt {

/// KL divergence I(a || b) between two distributions of the same kind.
/// Gaussian: closed form (reduces to (mu_a - mu_b)^2 / 2 for unit variance).
/// Bernoulli: means must lie strictly inside (0, 1).
inline double kl_divergence(const RewardDistribution& a, const RewardDistribution& b) {
    if (a.kind() != b.kind()) throw std::invalid_argument("kl_divergence: distribution kinds differ");
    switch (a.kind()) {
        case DistributionKind::Gaussian: {
            const double d = a.mean() - b.mean();
            const double sa2 = a.sigma() * a.sigma();
            const double sb2 = b.sigma() * b.sigma();
            if (sa2 == sb2) return d * d / (2.0 * sa2);
            return std::log(b.sigma() / a.sigma()) + (sa2 + d * d) / (2.0 * sb2) - 0.5;
        }
        case DistributionKind::Bernoulli: {
            const double p = a.mean(), q = b.mean();
            if (!(p > 0.0 && p < 1.0) || !(q > 0.0 && q < 1.0))
                throw std::invalid_argument("kl_divergence: bernoulli means must lie in (0, 1)");
            return p * std::log(p / q) + (1.0 - p) * std::log((1.0 - p) / (1.0 - q));
        }
        case DistributionKind::BoundedEmpirical: break;
    }
    throw std::invalid_argument("kl_divergence: unsupported distribution kind");
}

/// Means of the alternative instance used in the lower-bound program:
/// arms of the top class keep their means, arms of the bottom class move to
/// mu_max + min_top - mu_min, every other arm j moves to mu_max + min_top - mu_j.
inline std::vector<double> alternative_means(const BanditInstance& instance,
                                             const std::vector<ArmId>& top_class,
                                             const std::vector<ArmId>& bottom_class) {
    const auto& mu = instance.means();
    const double mu_max = *std::max_element(mu.begin(), mu.end());
    const double mu_min = *std::min_element(mu.begin(), mu.end());
    double min_top = mu_max;
    for (ArmId k : top_class) min_top = std::min(min_top, mu[k]);
    std::vector<double> out(mu.size());
    std::vector<int> role(mu.size(), 0);
    for (ArmId k : bottom_class) role[k] = 2;
    for (ArmId k : top_class) role[k] = 1;
    for (ArmId j = 0; j < mu.size(); ++j) {
        if (role[j] == 1)
            out[j] = mu[j];
        else if (role[j] == 2)
            out[j] = mu_max + min_top - mu_min;
        else
            out[j] = mu_max + min_top - mu[j];
    }
    return out;
}

/**
 * Optimal constant C1 of the asymptotic lower bound R(T) / ln T >= C1.
 *
 *   min  sum_i gap_i tau_i
 *   s.t. sum_{j not in top class} tau_j I(theta_j || theta'_j) >= 1
 *        tau_i >= 1 / I(theta_i || theta_max)   for i in top class, not optimal
 *        tau >= 0
 *
 * The top and bottom classes are the equivalence classes of the best and worst
 * arm in the UIG built from the instance. When the two coincide (complete
 * graph) the class constraint is dropped. Ground-truth diagnostic only.
 */
inline double lower_bound_constant(const BanditInstance& instance) {
    const std::size_t k = instance.size();
    const auto& gap = instance.gaps();
    if (instance.optimal_set().size() == k) return 0.0;

    const auto uig = build_uig(instance);
    const auto partition = equivalence_partition(uig);
    const auto& mu = instance.means();
    const ArmId best = instance.optimal_set().front();
    const ArmId worst = static_cast<ArmId>(std::min_element(mu.begin(), mu.end()) - mu.begin());
    const auto& top = partition.classes[partition.class_of[best]];
    const auto& bottom = partition.classes[partition.class_of[worst]];
    const bool coincide = partition.class_of[best] == partition.class_of[worst];

    std::vector<bool> in_top(k, false), optimal(k, false);
    for (ArmId a : top) in_top[a] = true;
    for (ArmId a : instance.optimal_set()) optimal[a] = true;

    LinearProgram lp;
    lp.objective = gap;
    if (!coincide) {
        const auto alt = alternative_means(instance, top, bottom);
        std::vector<double> row(k, 0.0);
        for (ArmId j = 0; j < k; ++j) {
            if (in_top[j]) continue;
            const auto& dist = instance.distribution(j);
            row[j] = kl_divergence(dist, dist.with_mean(alt[j]));
            if (!(row[j] > 0.0)) throw std::domain_error("lower_bound_constant: zero divergence to alternative");
        }
        lp.add_constraint(std::move(row), 1.0);
    }
    for (ArmId i : top) {
        if (optimal[i]) continue;
        const double info = kl_divergence(instance.distribution(i), instance.distribution(best));
        if (!(info > 0.0)) throw std::domain_error("lower_bound_constant: zero divergence to best arm");
        std::vector<double> row(k, 0.0);
        row[i] = 1.0;
        lp.add_constraint(std::move(row), 1.0 / info);
    }
    const auto sol = solve_lp(lp);
    if (sol.status != LpStatus::Optimal) throw std::logic_error("lower_bound_constant: program not optimal");
    return sol.objective;
}

}  // namespace lsdt
