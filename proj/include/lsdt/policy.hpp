#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "lsdt/random.hpp"
#include "lsdt/reward_models.hpp"

namespace lsdt {

/**
 * Sequential arm-selection contract.
 *
 * Steps are numbered t = 1, 2, ... . select(t) may be called more than once
 * for the same t (replay evaluation discards unmatched choices); the arm
 * passed to update(arm, reward, t) must be the one most recently returned by
 * select(t). Any other call order throws std::logic_error.
 */
class Policy {
public:
    explicit Policy(std::size_t arms) : arms_(arms) {}
    virtual ~Policy() = default;

    Policy(const Policy&) = delete;
    Policy& operator=(const Policy&) = delete;

    ArmId select(std::size_t t) {
        if (t != next_step_)
            throw std::logic_error("select(" + std::to_string(t) + ") out of order, expected step " +
                                   std::to_string(next_step_));
        const ArmId arm = choose(t);
        if (arm >= arms_) throw std::logic_error(name() + " selected an arm out of range");
        pending_ = arm;
        return arm;
    }

    void update(ArmId arm, double reward, std::size_t t) {
        if (!pending_ || t != next_step_)
            throw std::logic_error("update(" + std::to_string(t) + ") without a matching select");
        if (arm != *pending_) throw std::logic_error("update for an arm that was not selected");
        pending_.reset();
        ++next_step_;
        observe(arm, reward, t);
    }

    std::size_t arms() const noexcept { return arms_; }
    std::size_t steps_completed() const noexcept { return next_step_ - 1; }
    virtual std::string name() const = 0;

protected:
    virtual ArmId choose(std::size_t t) = 0;
    virtual void observe(ArmId arm, double reward, std::size_t t) = 0;

private:
    std::size_t arms_;
    std::size_t next_step_ = 1;
    std::optional<ArmId> pending_;
};

/// Running reward sum and play count per arm.
struct ArmStats {
    explicit ArmStats(std::size_t k = 0) : sum(k, 0.0), count(k, 0) {}

    void add(ArmId arm, double reward) {
        sum[arm] += reward;
        ++count[arm];
    }
    double mean(ArmId arm) const { return count[arm] ? sum[arm] / static_cast<double>(count[arm]) : 0.0; }

    std::vector<double> sum;
    std::vector<std::size_t> count;
};

inline double clamped_log(double x) { return x > 1.0 ? std::log(x) : 0.0; }

/// mean + sqrt(c ln t / plays). Shared by UCB1 (c = 2) and the arm index of
/// the complete-information learner (c = 8 for unit sub-Gaussian rewards).
inline double ucb_index(double mean, double plays, double t, double c) {
    if (!(plays > 0.0)) throw std::invalid_argument("ucb_index: arm has not been played");
    return mean + std::sqrt(c * clamped_log(t) / plays);
}

inline double csi_arm_index(double mean, double plays, double t, double c_idx = 8.0) {
    return ucb_index(mean, plays, t, c_idx);
}

/// Class index: pooled mean over the class plus a radius shrinking with the
/// pooled play count.
inline double csi_class_index(std::span<const double> means, std::span<const double> plays, double t,
                              double c_idx = 8.0) {
    if (means.empty() || means.size() != plays.size())
        throw std::invalid_argument("csi_class_index: empty or mismatched class");
    double weighted = 0.0, total = 0.0;
    for (std::size_t j = 0; j < means.size(); ++j) {
        weighted += means[j] * plays[j];
        total += plays[j];
    }
    if (!(total > 0.0)) throw std::invalid_argument("csi_class_index: class has not been played");
    return weighted / total + std::sqrt(c_idx * clamped_log(t) / total);
}

/// Message when an index constant is too small for sigma-sub-Gaussian
/// rewards (needs c > 6 sigma^2), empty otherwise.
inline std::optional<std::string> validate_index_constant(double c_idx, double sigma) {
    if (c_idx > 6.0 * sigma * sigma) return std::nullopt;
    return "index constant " + std::to_string(c_idx) + " is not above 6*sigma^2 = " +
           std::to_string(6.0 * sigma * sigma) + "; regret guarantees do not apply";
}

namespace detail {

inline std::vector<ArmId> all_arms(std::size_t k) {
    std::vector<ArmId> v(k);
    for (std::size_t i = 0; i < k; ++i) v[i] = i;
    return v;
}

}  // namespace detail

/// UCB1 over an allowed arm subset (all arms by default). Each allowed arm
/// is played once in ascending order, then argmax of
/// mean + sqrt(c ln n / plays) with n = t - 1 completed steps.
class Ucb1 : public Policy {
public:
    explicit Ucb1(std::size_t k, double exploration = 2.0, std::vector<ArmId> allowed = {})
        : Policy(k), c_(exploration), allowed_(allowed.empty() ? detail::all_arms(k) : std::move(allowed)),
          stats_(k) {
        std::sort(allowed_.begin(), allowed_.end());
    }

    std::string name() const override { return "ucb1"; }
    const ArmStats& stats() const noexcept { return stats_; }

protected:
    ArmId choose(std::size_t t) override {
        for (ArmId a : allowed_)
            if (stats_.count[a] == 0) return a;
        ArmId best = allowed_.front();
        double best_index = -std::numeric_limits<double>::infinity();
        for (ArmId a : allowed_) {
            const double idx = ucb_index(stats_.mean(a), static_cast<double>(stats_.count[a]),
                                         static_cast<double>(t - 1), c_);
            if (idx > best_index) {
                best_index = idx;
                best = a;
            }
        }
        return best;
    }

    void observe(ArmId arm, double reward, std::size_t) override { stats_.add(arm, reward); }

private:
    double c_;
    std::vector<ArmId> allowed_;
    ArmStats stats_;
};

/// Success/failure pseudo-counts with Bernoulli-ization of bounded rewards:
/// a reward r (clamped to [0, 1]) counts as a success with probability r.
class BetaCounts {
public:
    explicit BetaCounts(std::size_t k = 0) : success_(k, 0.0), failure_(k, 0.0) {}

    void record(ArmId arm, double reward, RandomStream& rng) {
        const double r = std::clamp(reward, 0.0, 1.0);
        if (rng.bernoulli(r))
            success_[arm] += 1.0;
        else
            failure_[arm] += 1.0;
    }

    void prime(ArmId arm, double successes, double failures) {
        success_[arm] += successes;
        failure_[arm] += failures;
    }

    double successes(ArmId arm) const { return success_[arm]; }
    double failures(ArmId arm) const { return failure_[arm]; }

private:
    std::vector<double> success_;
    std::vector<double> failure_;
};

/// Thompson sampling with Beta(1, 1) priors and Bernoulli likelihood, over an
/// allowed arm subset (all arms by default).
class ThompsonBernoulli : public Policy {
public:
    ThompsonBernoulli(std::size_t k, std::uint64_t seed, std::vector<ArmId> allowed = {})
        : Policy(k), rng_(seed), allowed_(allowed.empty() ? detail::all_arms(k) : std::move(allowed)),
          counts_(k) {
        std::sort(allowed_.begin(), allowed_.end());
    }

    std::string name() const override { return "ts"; }

    /// Adds pseudo-observations to an arm's posterior.
    void prime(ArmId arm, double successes, double failures) { counts_.prime(arm, successes, failures); }

protected:
    ArmId choose(std::size_t) override {
        ArmId best = allowed_.front();
        double best_draw = -1.0;
        for (ArmId a : allowed_) {
            const double draw = rng_.beta(1.0 + counts_.successes(a), 1.0 + counts_.failures(a));
            if (draw > best_draw) {
                best_draw = draw;
                best = a;
            }
        }
        return best;
    }

    void observe(ArmId arm, double reward, std::size_t) override { counts_.record(arm, reward, rng_); }

private:
    RandomStream rng_;
    std::vector<ArmId> allowed_;
    BetaCounts counts_;
};

}  // namespace lsdt
