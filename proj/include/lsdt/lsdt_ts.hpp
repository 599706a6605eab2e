#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "lsdt/policy.hpp"
#include "lsdt/side_info.hpp"
#include "lsdt/uig.hpp"

namespace lsdt {

// Posterior-sampling counterparts of the two learners. Rewards are
// Bernoulli-ized like ThompsonBernoulli. Class and neighborhood posteriors
// pool the pseudo-counts of their member arms.

/// Samples a class from pooled Beta posteriors, then an arm inside it from
/// arm-level posteriors. Singleton classes skip the second draw.
class LsdtTsCsi : public Policy {
public:
    LsdtTsCsi(std::size_t k, CandidateSetResult candidates, std::uint64_t seed)
        : Policy(k), classes_(std::move(candidates.anchor_classes)), rng_(seed), counts_(k) {
        if (classes_.empty()) throw std::invalid_argument("lsdt-ts-csi: no anchor classes");
        for (const auto& cls : classes_)
            for (ArmId a : cls)
                if (a >= k) throw std::out_of_range("lsdt-ts-csi: anchor arm out of range");
    }

    std::string name() const override { return "lsdt-ts-csi"; }

    void prime(ArmId arm, double successes, double failures) { counts_.prime(arm, successes, failures); }

protected:
    ArmId choose(std::size_t) override {
        std::size_t best_class = 0;
        double best = -1.0;
        for (std::size_t c = 0; c < classes_.size(); ++c) {
            double s = 0.0, f = 0.0;
            for (ArmId a : classes_[c]) {
                s += counts_.successes(a);
                f += counts_.failures(a);
            }
            const double draw = rng_.beta(1.0 + s, 1.0 + f);
            if (draw > best) {
                best = draw;
                best_class = c;
            }
        }
        const auto& cls = classes_[best_class];
        if (cls.size() == 1) return cls.front();
        ArmId arm = cls.front();
        best = -1.0;
        for (ArmId a : cls) {
            const double draw = rng_.beta(1.0 + counts_.successes(a), 1.0 + counts_.failures(a));
            if (draw > best) {
                best = draw;
                arm = a;
            }
        }
        return arm;
    }

    void observe(ArmId arm, double reward, std::size_t) override { counts_.record(arm, reward, rng_); }

private:
    std::vector<std::vector<ArmId>> classes_;
    RandomStream rng_;
    BetaCounts counts_;
};

/**
 * Thompson sampling over the active subset of B0. After each update the
 * active arm with the lowest neighborhood-pooled posterior mean is removed
 * when its upper band plus eps is at most the best lower band of the other
 * active arms. Bands are mean +/- width * sd with width = sqrt(2 ln T).
 * Only arms whose neighborhood holds at least `min_pooled` observations are
 * considered. The last active arm is never removed.
 */
class LsdtTsPsi : public Policy {
public:
    LsdtTsPsi(std::size_t k, Subgraph sub, std::size_t horizon, double epsilon, std::uint64_t seed,
              double min_pooled = 10.0)
        : Policy(k), sub_(std::move(sub)), epsilon_(epsilon), min_pooled_(min_pooled),
          width_(std::sqrt(2.0 * clamped_log(static_cast<double>(horizon)))), rng_(seed),
          counts_(sub_.nodes.size()), local_of_(k, npos) {
        if (sub_.nodes.empty()) throw std::invalid_argument("lsdt-ts-psi: empty candidate set");
        for (std::size_t i = 0; i < sub_.nodes.size(); ++i) {
            if (sub_.nodes[i] >= k) throw std::out_of_range("lsdt-ts-psi: arm out of range");
            local_of_[sub_.nodes[i]] = i;
            active_.push_back(i);
        }
    }

    std::string name() const override { return "lsdt-ts-psi"; }

    std::vector<ArmId> active_arms() const {
        std::vector<ArmId> out;
        for (auto i : active_) out.push_back(sub_.nodes[i]);
        return out;
    }

protected:
    ArmId choose(std::size_t) override {
        std::size_t best = active_.front();
        double best_draw = -1.0;
        for (auto i : active_) {
            const double draw = rng_.beta(1.0 + counts_.successes(i), 1.0 + counts_.failures(i));
            if (draw > best_draw) {
                best_draw = draw;
                best = i;
            }
        }
        return sub_.nodes[best];
    }

    void observe(ArmId arm, double reward, std::size_t) override {
        const auto i = local_of_[arm];
        if (i == npos) throw std::logic_error("lsdt-ts-psi: update for an arm outside the candidate set");
        counts_.record(i, reward, rng_);
        maybe_eliminate();
    }

private:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    struct Pooled {
        double mean, sd, n;
    };

    Pooled pooled(std::size_t i) const {
        double s = counts_.successes(i), f = counts_.failures(i);
        for (ArmId j : sub_.graph.neighbors(i)) {
            s += counts_.successes(j);
            f += counts_.failures(j);
        }
        const double a = 1.0 + s, b = 1.0 + f;
        const double mean = a / (a + b);
        const double sd = std::sqrt(a * b / ((a + b) * (a + b) * (a + b + 1.0)));
        return {mean, sd, s + f};
    }

    void maybe_eliminate() {
        if (active_.size() < 2) return;
        std::vector<Pooled> post;
        for (auto i : active_) post.push_back(pooled(i));
        std::size_t worst = npos;
        for (std::size_t a = 0; a < active_.size(); ++a)
            if (post[a].n >= min_pooled_ && (worst == npos || post[a].mean < post[worst].mean)) worst = a;
        if (worst == npos) return;
        double best_lower = -std::numeric_limits<double>::infinity();
        for (std::size_t a = 0; a < active_.size(); ++a)
            if (a != worst) best_lower = std::max(best_lower, post[a].mean - width_ * post[a].sd);
        if (post[worst].mean + width_ * post[worst].sd + epsilon_ <= best_lower)
            active_.erase(active_.begin() + static_cast<std::ptrdiff_t>(worst));
    }

    Subgraph sub_;
    double epsilon_;
    double min_pooled_;
    double width_;
    RandomStream rng_;
    BetaCounts counts_;
    std::vector<std::size_t> local_of_;
    std::vector<std::size_t> active_;
};

}  // namespace lsdt
