#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "lsdt/exploration.hpp"
#include "lsdt/policy.hpp"
#include "lsdt/side_info.hpp"

namespace lsdt {

/// Plays required of an arm by the end of epoch m (cumulative):
/// ceil(lambda z ln(T d^2) / d^2), d = 2^-m, log clamped at 0.
inline std::size_t psi_epoch_quota(double z, double lambda, double horizon, double delta) {
    if (!(lambda > 0.0)) throw std::invalid_argument("psi_epoch_quota: lambda must be positive");
    const double log_term = clamped_log(horizon * delta * delta);
    const double value = lambda * z * log_term / (delta * delta);
    if (!(value > 0.0)) return 0;
    return static_cast<std::size_t>(std::ceil(value));
}

/// Final epoch index min{ceil(log2(8 / (sqrt(2 lambda) eps))), floor(log2(T / e) / 2)},
/// floored at 0.
inline std::size_t psi_final_epoch(double lambda, double epsilon, double horizon) {
    if (!(lambda > 0.0) || !(epsilon > 0.0)) throw std::invalid_argument("psi_final_epoch: lambda, eps must be positive");
    const double first = std::ceil(std::log2(8.0 / (std::sqrt(2.0 * lambda) * epsilon)));
    const double second = horizon > 0.0 ? std::floor(0.5 * std::log2(horizon / std::exp(1.0))) : 0.0;
    const double m = std::min(first, second);
    return m > 0.0 ? static_cast<std::size_t>(m) : 0;
}

/// Neighborhood-aggregated mean with confidence radius sqrt(beta log_term / n).
/// An arm whose closed neighborhood has no plays gets an infinite radius.
struct AggregatedBound {
    double mean = 0.0;
    double radius = std::numeric_limits<double>::infinity();
    double plays = 0.0;
    double upper() const { return plays > 0.0 ? mean + radius : std::numeric_limits<double>::infinity(); }
    double lower() const { return plays > 0.0 ? mean - radius : -std::numeric_limits<double>::infinity(); }
};

inline AggregatedBound aggregated_bound(const Graph& g, std::size_t node, std::span<const double> sums,
                                        std::span<const std::size_t> counts, double log_term, double beta) {
    AggregatedBound b;
    double total = sums[node];
    b.plays = static_cast<double>(counts[node]);
    for (ArmId j : g.neighbors(node)) {
        total += sums[j];
        b.plays += static_cast<double>(counts[j]);
    }
    if (b.plays > 0.0) {
        b.mean = total / b.plays;
        b.radius = std::sqrt(beta * log_term / b.plays);
    }
    return b;
}

/**
 * End-of-epoch elimination over local node ids of the similarity subgraph.
 * Node i leaves the active set when its aggregated upper bound plus eps is
 * at most the best aggregated lower bound among active nodes. All tests use
 * the statistics before any removal. beta = 1/2 gives the radius
 * sqrt(log_term / (2 n)). Returns the survivors in ascending order.
 */
inline std::vector<std::size_t> psi_eliminate(const Graph& g, std::span<const double> sums,
                                              std::span<const std::size_t> counts,
                                              const std::vector<std::size_t>& active, double log_term,
                                              double epsilon, double beta = 0.5) {
    std::vector<AggregatedBound> bounds;
    bounds.reserve(active.size());
    double best_lower = -std::numeric_limits<double>::infinity();
    for (auto i : active) {
        bounds.push_back(aggregated_bound(g, i, sums, counts, log_term, beta));
        best_lower = std::max(best_lower, bounds.back().lower());
    }
    std::vector<std::size_t> out;
    for (std::size_t a = 0; a < active.size(); ++a)
        if (!(bounds[a].upper() + epsilon <= best_lower)) out.push_back(active[a]);
    return out;
}

/**
 * Partial-side-information learner: epoch-based elimination over the
 * offline survivors B0, sharing observations across revealed-similar arms,
 * followed by UCB over the final survivors.
 *
 * Within an epoch the arm with the largest remaining quota is served first
 * (ties to the lowest id). Epoch bookkeeping happens lazily inside select,
 * so repeated select calls at one step return the same arm.
 */
class LsdtPsi : public Policy {
public:
    enum class Phase { Epoch, Single, Final };

    struct Params {
        double lambda = 0.125;
        double beta = 0.5;
    };

    /// `sub` is the similarity graph induced on B0 (sub.nodes == B0) and
    /// `z` its exploration values, indexed like sub.nodes.
    LsdtPsi(std::size_t k, Subgraph sub, ExplorationValues z, std::size_t horizon, double epsilon, Params params)
        : Policy(k), sub_(std::move(sub)), z_(std::move(z.z)), horizon_(static_cast<double>(horizon)),
          epsilon_(epsilon), params_(params), sums_(sub_.nodes.size(), 0.0), counts_(sub_.nodes.size(), 0),
          targets_(sub_.nodes.size(), 0), local_of_(k, npos) {
        const std::size_t n = sub_.nodes.size();
        if (n == 0) throw std::invalid_argument("lsdt-psi: empty candidate set");
        if (sub_.graph.size() != n || z_.size() != n) throw std::invalid_argument("lsdt-psi: inconsistent inputs");
        if (!(epsilon > 0.0)) throw std::invalid_argument("lsdt-psi: epsilon must be positive");
        if (!(params.beta > 0.0)) throw std::invalid_argument("lsdt-psi: beta must be positive");
        for (std::size_t i = 0; i < n; ++i) {
            if (sub_.nodes[i] >= k) throw std::out_of_range("lsdt-psi: arm out of range");
            local_of_[sub_.nodes[i]] = i;
            // Clean LP round-off so that zero-weight arms get no quota.
            if (z_[i] < 1e-12) z_[i] = 0.0;
            active_.push_back(i);
        }
        final_epoch_ = psi_final_epoch(params.lambda, epsilon, horizon_);
        play_ = active_;
        start_epoch();
    }

    std::string name() const override { return "lsdt-psi"; }

    Phase phase() const noexcept { return phase_; }
    std::size_t epoch() const noexcept { return epoch_; }
    std::size_t final_epoch() const noexcept { return final_epoch_; }
    double delta() const noexcept { return delta_; }
    std::vector<ArmId> active_arms() const { return to_arms(active_); }
    std::vector<ArmId> play_arms() const { return to_arms(play_); }
    std::size_t plays(ArmId arm) const { return local_of_[arm] == npos ? 0 : counts_[local_of_[arm]]; }
    std::size_t quota_target(ArmId arm) const { return local_of_[arm] == npos ? 0 : targets_[local_of_[arm]]; }

protected:
    ArmId choose(std::size_t t) override {
        while (true) {
            if (phase_ == Phase::Single) return sub_.nodes[active_.front()];
            if (phase_ == Phase::Final) return sub_.nodes[final_choice(t)];
            std::size_t pick = npos, deficit = 0;
            for (auto i : play_) {
                const std::size_t need = targets_[i] > counts_[i] ? targets_[i] - counts_[i] : 0;
                if (need > deficit) {
                    deficit = need;
                    pick = i;
                }
            }
            if (pick != npos) return sub_.nodes[pick];
            end_epoch();
        }
    }

    void observe(ArmId arm, double reward, std::size_t) override {
        const auto i = local_of_[arm];
        if (i == npos) throw std::logic_error("lsdt-psi: update for an arm outside the candidate set");
        sums_[i] += reward;
        ++counts_[i];
    }

private:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    void start_epoch() {
        if (epoch_ > final_epoch_) {
            phase_ = Phase::Final;
            return;
        }
        if (active_.size() == 1) {
            phase_ = Phase::Single;
            return;
        }
        for (auto i : play_)
            targets_[i] = std::max(targets_[i], psi_epoch_quota(z_[i], params_.lambda, horizon_, delta_));
    }

    void end_epoch() {
        const double log_term = clamped_log(horizon_ * delta_ * delta_);
        active_ = psi_eliminate(sub_.graph, sums_, counts_, active_, log_term, epsilon_, params_.beta);
        NodeSet alive(sub_.nodes.size());
        for (auto i : active_) alive.set(i);
        play_.clear();
        for (std::size_t i = 0; i < sub_.nodes.size(); ++i)
            if ((sub_.graph.closed_neighborhood(i) & alive).any()) play_.push_back(i);
        delta_ /= 2.0;
        ++epoch_;
        start_epoch();
    }

    std::size_t final_choice(std::size_t t) const {
        for (auto i : active_)
            if (counts_[i] == 0) return i;
        const double log_term = clamped_log(static_cast<double>(t - 1));
        std::size_t best = active_.front();
        double best_index = -std::numeric_limits<double>::infinity();
        for (auto i : active_) {
            const double n = static_cast<double>(counts_[i]);
            const double idx = sums_[i] / n + std::sqrt(2.0 * log_term / n);
            if (idx > best_index) {
                best_index = idx;
                best = i;
            }
        }
        return best;
    }

    std::vector<ArmId> to_arms(const std::vector<std::size_t>& local) const {
        std::vector<ArmId> out;
        for (auto i : local) out.push_back(sub_.nodes[i]);
        return out;
    }

    Subgraph sub_;
    std::vector<double> z_;
    double horizon_;
    double epsilon_;
    Params params_;
    std::vector<double> sums_;
    std::vector<std::size_t> counts_;
    std::vector<std::size_t> targets_;
    std::vector<std::size_t> local_of_;
    std::vector<std::size_t> active_;
    std::vector<std::size_t> play_;
    Phase phase_ = Phase::Epoch;
    std::size_t epoch_ = 0;
    std::size_t final_epoch_ = 0;
    double delta_ = 1.0;
};

}  // namespace lsdt
