#pragma once

#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "lsdt/policy.hpp"
#include "lsdt/uig.hpp"

namespace lsdt {

/// Complete-side-information learner. Plays each candidate arm once, then
/// picks the anchor class with the largest class index and, inside it, the
/// arm with the largest arm index. Indices at step t use t - 1 completed steps.
class LsdtCsi : public Policy {
public:
    LsdtCsi(std::size_t k, CandidateSetResult candidates, double c_idx = 8.0)
        : Policy(k), classes_(std::move(candidates.anchor_classes)), c_(c_idx), stats_(k) {
        if (classes_.empty()) throw std::invalid_argument("lsdt-csi: no anchor classes");
        for (const auto& cls : classes_) {
            if (cls.empty()) throw std::invalid_argument("lsdt-csi: empty anchor class");
            for (ArmId a : cls) {
                if (a >= k) throw std::out_of_range("lsdt-csi: anchor arm out of range");
                init_order_.push_back(a);
            }
        }
        std::sort(init_order_.begin(), init_order_.end());
    }

    std::string name() const override { return "lsdt-csi"; }
    const ArmStats& stats() const noexcept { return stats_; }
    const std::vector<std::vector<ArmId>>& classes() const noexcept { return classes_; }

    double arm_index(ArmId arm, double t) const {
        return csi_arm_index(stats_.mean(arm), static_cast<double>(stats_.count[arm]), t, c_);
    }

    double class_index(std::size_t cls, double t) const {
        std::vector<double> means, plays;
        for (ArmId a : classes_[cls]) {
            means.push_back(stats_.mean(a));
            plays.push_back(static_cast<double>(stats_.count[a]));
        }
        return csi_class_index(means, plays, t, c_);
    }

protected:
    ArmId choose(std::size_t t) override {
        for (ArmId a : init_order_)
            if (stats_.count[a] == 0) return a;
        const double n = static_cast<double>(t - 1);
        std::size_t best_class = 0;
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < classes_.size(); ++c) {
            const double h = class_index(c, n);
            if (h > best) {
                best = h;
                best_class = c;
            }
        }
        ArmId arm = classes_[best_class].front();
        best = -std::numeric_limits<double>::infinity();
        for (ArmId a : classes_[best_class]) {
            const double l = arm_index(a, n);
            if (l > best || (l == best && a < arm)) {
                best = l;
                arm = a;
            }
        }
        return arm;
    }

    void observe(ArmId arm, double reward, std::size_t) override { stats_.add(arm, reward); }

private:
    std::vector<std::vector<ArmId>> classes_;
    double c_;
    ArmStats stats_;
    std::vector<ArmId> init_order_;
};

}  // namespace lsdt
