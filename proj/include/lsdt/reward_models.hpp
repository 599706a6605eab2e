#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lsdt/random.hpp"

namespace lsdt {

using ArmId = std::size_t;

enum class DistributionKind { Gaussian, Bernoulli, BoundedEmpirical };

inline std::string to_string(DistributionKind kind) {
    switch (kind) {
        case DistributionKind::Gaussian: return "gaussian";
        case DistributionKind::Bernoulli: return "bernoulli";
        case DistributionKind::BoundedEmpirical: return "bounded_empirical";
    }
    return "unknown";
}

/**
 * Sub-Gaussian reward distribution of a single arm.
 *
 * Construct through the named factories; they enforce the per-kind
 * invariants (Bernoulli mean in [0,1], Gaussian sigma > 0, empirical
 * support in [0,1] with probabilities summing to one). Bernoulli and
 * bounded-empirical distributions carry sigma = 1/2.
 */
class RewardDistribution {
public:
    static RewardDistribution gaussian(double mean, double sigma = 1.0) {
        if (!(sigma > 0.0) || !std::isfinite(sigma))
            throw std::invalid_argument("gaussian sigma must be positive");
        if (!std::isfinite(mean)) throw std::invalid_argument("gaussian mean must be finite");
        return RewardDistribution(DistributionKind::Gaussian, mean, sigma, {}, {});
    }

    static RewardDistribution bernoulli(double mean) {
        if (!(mean >= 0.0 && mean <= 1.0))
            throw std::invalid_argument("bernoulli mean must lie in [0, 1]");
        return RewardDistribution(DistributionKind::Bernoulli, mean, 0.5, {}, {});
    }

    static RewardDistribution bounded_empirical(std::vector<double> support,
                                                std::vector<double> probabilities) {
        if (support.empty() || support.size() != probabilities.size())
            throw std::invalid_argument("empirical support and probabilities must match");
        double total = 0.0, mean = 0.0;
        for (std::size_t i = 0; i < support.size(); ++i) {
            if (!(support[i] >= 0.0 && support[i] <= 1.0))
                throw std::invalid_argument("empirical support must lie in [0, 1]");
            if (!(probabilities[i] >= 0.0))
                throw std::invalid_argument("empirical probabilities must be nonnegative");
            total += probabilities[i];
            mean += support[i] * probabilities[i];
        }
        if (std::abs(total - 1.0) > 1e-12)
            throw std::invalid_argument("empirical probabilities must sum to 1");
        return RewardDistribution(DistributionKind::BoundedEmpirical, mean, 0.5,
                                  std::move(support), std::move(probabilities));
    }

    DistributionKind kind() const noexcept { return kind_; }
    double mean() const noexcept { return mean_; }
    double sigma() const noexcept { return sigma_; }
    const std::vector<double>& support() const noexcept { return support_; }
    const std::vector<double>& probabilities() const noexcept { return probabilities_; }

    /// Same kind and parameters, different mean. Used to build alternative
    /// instances for the lower-bound program.
    RewardDistribution with_mean(double mean) const {
        switch (kind_) {
            case DistributionKind::Gaussian: return gaussian(mean, sigma_);
            case DistributionKind::Bernoulli: return bernoulli(mean);
            case DistributionKind::BoundedEmpirical: break;
        }
        throw std::invalid_argument("cannot shift the mean of an empirical distribution");
    }

private:
    RewardDistribution(DistributionKind kind, double mean, double sigma,
                       std::vector<double> support, std::vector<double> probabilities)
        : kind_(kind), mean_(mean), sigma_(sigma), support_(std::move(support)),
          probabilities_(std::move(probabilities)) {}

    DistributionKind kind_;
    double mean_;
    double sigma_;
    std::vector<double> support_;
    std::vector<double> probabilities_;
};

/// One draw. Gaussian uses Box-Muller over the stream's uniform generator,
/// Bernoulli compares one uniform against the mean, the empirical kind
/// inverts its CDF with one uniform.
inline double sample(const RewardDistribution& dist, RandomStream& rng) {
    switch (dist.kind()) {
        case DistributionKind::Gaussian:
            return dist.mean() + dist.sigma() * rng.normal();
        case DistributionKind::Bernoulli:
            return rng.bernoulli(dist.mean()) ? 1.0 : 0.0;
        case DistributionKind::BoundedEmpirical: {
            const double u = rng.uniform01();
            double acc = 0.0;
            const auto& p = dist.probabilities();
            for (std::size_t i = 0; i < p.size(); ++i) {
                acc += p[i];
                if (u < acc) return dist.support()[i];
            }
            return dist.support().back();
        }
    }
    return dist.mean();
}

struct GapInfo {
    std::vector<double> gaps;
    std::vector<ArmId> optimal_set;
};

/// Gaps against the largest mean; the optimal set keeps every arm whose mean
/// equals the maximum exactly.
inline GapInfo gaps(std::span<const double> means) {
    if (means.empty()) throw std::invalid_argument("gaps: need at least one arm");
    const double best = *std::max_element(means.begin(), means.end());
    GapInfo info;
    info.gaps.reserve(means.size());
    for (std::size_t i = 0; i < means.size(); ++i) {
        info.gaps.push_back(best - means[i]);
        if (means[i] == best) info.optimal_set.push_back(i);
    }
    return info;
}

/// A K-armed instance with its similarity threshold. Immutable once built.
class BanditInstance {
public:
    BanditInstance(std::vector<RewardDistribution> distributions, double epsilon)
        : distributions_(std::move(distributions)), epsilon_(epsilon) {
        if (distributions_.empty()) throw std::invalid_argument("instance needs at least one arm");
        if (!(epsilon_ > 0.0)) throw std::invalid_argument("epsilon must be positive");
        means_.reserve(distributions_.size());
        for (const auto& d : distributions_) means_.push_back(d.mean());
        auto info = ::lsdt::gaps(means_);
        gaps_ = std::move(info.gaps);
        optimal_set_ = std::move(info.optimal_set);
    }

    static BanditInstance gaussian(std::span<const double> means, double epsilon,
                                   double sigma = 1.0) {
        std::vector<RewardDistribution> d;
        d.reserve(means.size());
        for (double m : means) d.push_back(RewardDistribution::gaussian(m, sigma));
        return BanditInstance(std::move(d), epsilon);
    }

    static BanditInstance bernoulli(std::span<const double> means, double epsilon) {
        std::vector<RewardDistribution> d;
        d.reserve(means.size());
        for (double m : means) d.push_back(RewardDistribution::bernoulli(m));
        return BanditInstance(std::move(d), epsilon);
    }

    std::size_t size() const noexcept { return distributions_.size(); }
    double epsilon() const noexcept { return epsilon_; }
    const std::vector<double>& means() const noexcept { return means_; }
    const std::vector<double>& gaps() const noexcept { return gaps_; }
    const std::vector<ArmId>& optimal_set() const noexcept { return optimal_set_; }
    const RewardDistribution& distribution(ArmId arm) const { return distributions_.at(arm); }
    const std::vector<RewardDistribution>& distributions() const noexcept { return distributions_; }
    double max_gap() const { return *std::max_element(gaps_.begin(), gaps_.end()); }

    double pull(ArmId arm, RandomStream& rng) const { return sample(distributions_.at(arm), rng); }

private:
    std::vector<RewardDistribution> distributions_;
    double epsilon_;
    std::vector<double> means_;
    std::vector<double> gaps_;
    std::vector<ArmId> optimal_set_;
};

}  // namespace lsdt
