#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "lsdt/offline/ratings.hpp"
#include "lsdt/side_info.hpp"

namespace lsdt {

/// Symmetric item-pair distances from co-raters: |mean_i - mean_j| where
/// both means run over the users who rated i and j. Empty when no user
/// rated both.
class PairDistances {
public:
    explicit PairDistances(std::size_t k = 0) : k_(k), d_(k * k) {}

    std::size_t size() const noexcept { return k_; }
    const std::optional<double>& at(ArmId i, ArmId j) const { return d_[i * k_ + j]; }
    void set(ArmId i, ArmId j, double v) { d_[i * k_ + j] = d_[j * k_ + i] = v; }

private:
    std::size_t k_;
    std::vector<std::optional<double>> d_;
};

inline PairDistances co_rating_distances(const RatingsTable& table) {
    const std::size_t k = table.item_count();
    std::vector<std::vector<std::pair<ArmId, double>>> by_user(table.users.size());
    for (const auto& r : table.ratings) by_user[r.user].emplace_back(r.item, r.value);
    // sum[i * k + j]: total rating of i over users who rated both i and j.
    std::vector<double> sum(k * k, 0.0);
    std::vector<std::size_t> count(k * k, 0);
    for (const auto& rated : by_user)
        for (const auto& [i, vi] : rated)
            for (const auto& [j, vj] : rated) {
                if (i == j) continue;
                sum[i * k + j] += vi;
                ++count[i * k + j];
            }
    PairDistances out(k);
    for (ArmId i = 0; i < k; ++i)
        for (ArmId j = i + 1; j < k; ++j) {
            const auto n = count[i * k + j];
            if (n == 0) continue;
            out.set(i, j, std::abs(sum[i * k + j] - sum[j * k + i]) / static_cast<double>(n));
        }
    return out;
}

struct EstimatedSideInfo {
    SideInfoGraph side_info;
    double alpha = 0.0;
    double epsilon = 0.0;
};

/// S when distance < (1 - alpha) eps, D when distance > (1 + alpha) eps,
/// unknown otherwise or without co-raters.
inline EstimatedSideInfo classify_pairs(const PairDistances& d, double epsilon, double alpha) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("estimate_side_info: epsilon must be positive");
    if (!(alpha >= 0.0 && alpha < 1.0)) throw std::invalid_argument("estimate_side_info: alpha must lie in [0, 1)");
    EstimatedSideInfo out{SideInfoGraph(d.size()), alpha, epsilon};
    for (ArmId i = 0; i < d.size(); ++i)
        for (ArmId j = i + 1; j < d.size(); ++j) {
            const auto& v = d.at(i, j);
            if (!v) continue;
            if (*v < (1.0 - alpha) * epsilon)
                out.side_info.add_similar(i, j);
            else if (*v > (1.0 + alpha) * epsilon)
                out.side_info.add_dissimilar(i, j);
        }
    return out;
}

inline EstimatedSideInfo estimate_side_info(const RatingsTable& train, double epsilon, double alpha) {
    return classify_pairs(co_rating_distances(train), epsilon, alpha);
}

/// |B0| after offline elimination on side information estimated at `epsilon`.
inline std::size_t survivor_count(const PairDistances& d, double epsilon, double alpha) {
    return triangle_eliminate(classify_pairs(d, epsilon, alpha).side_info).size();
}

struct EpsilonSearchResult {
    double epsilon = 0.0;
    std::size_t survivors = 0;
    std::map<long long, std::size_t> evaluated;  // grid step -> |B0|
};

/**
 * Picks eps on the grid {k * resolution} minimizing |B0|.
 *
 * Doubling from eps0 stops at the first strict increase of |B0| (or at
 * eps = 1). The minimum is then searched on the grid between the last two
 * doubling points before the increase, assuming |B0| first falls and then
 * rises (plateaus allowed). The answer is the smallest-eps minimizer among
 * every evaluated point, so a flat |B0| returns eps0.
 */
inline EpsilonSearchResult epsilon_search(const PairDistances& d, double alpha, double eps0 = 0.01,
                                          double resolution = 0.01) {
    if (!(resolution > 0.0) || !(eps0 > 0.0)) throw std::invalid_argument("epsilon_search: eps0, resolution must be positive");
    const double cap = 1.0;
    EpsilonSearchResult out;
    auto step_of = [&](double eps) { return std::llround(eps / resolution); };
    auto eps_of = [&](long long k) { return static_cast<double>(k) * resolution; };
    auto eval = [&](long long k) {
        auto it = out.evaluated.find(k);
        if (it != out.evaluated.end()) return it->second;
        const auto s = survivor_count(d, eps_of(k), alpha);
        out.evaluated.emplace(k, s);
        return s;
    };

    const long long k0 = std::max<long long>(1, step_of(eps0));
    const long long k_cap = std::max(k0, step_of(cap));
    long long before = k0, prev = k0, cur = k0;
    std::size_t prev_size = eval(k0);
    while (cur < k_cap) {
        cur = std::min(cur * 2, k_cap);
        const auto size = eval(cur);
        if (size > prev_size) break;
        before = prev;
        prev = cur;
        prev_size = size;
    }

    // Minimum of a falls-then-rises sequence on [lo, hi], leftmost on ties.
    long long lo = before, hi = cur;
    while (lo < hi) {
        const long long mid = lo + (hi - lo) / 2;
        const auto at_mid = eval(mid);
        long long next = mid + 1;
        while (next <= hi && eval(next) == at_mid) ++next;
        if (next > hi || eval(next) > at_mid)
            hi = mid;
        else
            lo = next;
    }
    eval(lo);

    auto best = out.evaluated.begin();
    for (auto it = out.evaluated.begin(); it != out.evaluated.end(); ++it)
        if (it->second < best->second) best = it;
    out.epsilon = eps_of(best->first);
    out.survivors = best->second;
    return out;
}

}  // namespace lsdt
