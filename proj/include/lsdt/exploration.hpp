#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "lsdt/graph.hpp"
#include "lsdt/lp.hpp"

namespace lsdt {

/// Fractional closed-neighborhood cover of a similarity graph: per-node
/// exploration values z and their total.
struct ExplorationValues {
    std::vector<double> z;
    double total = 0.0;
};

/**
 * Solves  min sum z  s.t.  sum_{j in N[i]} z_j >= 1 for every node,  z >= 0.
 * The program is always feasible (z = 1) and bounded; at the optimum every
 * z_i <= 1.
 */
inline ExplorationValues exploration_values(const Graph& g) {
    if (g.size() == 0) throw std::invalid_argument("exploration_values: empty graph");
    const std::size_t n = g.size();
    LinearProgram lp;
    lp.objective.assign(n, 1.0);
    for (ArmId i = 0; i < n; ++i) {
        std::vector<double> row(n, 0.0);
        row[i] = 1.0;
        for (ArmId j : g.neighbors(i)) row[j] = 1.0;
        lp.add_constraint(std::move(row), 1.0);
    }
    const auto sol = solve_lp(lp);
    if (sol.status != LpStatus::Optimal) throw std::logic_error("exploration_values: covering LP not optimal");
    ExplorationValues out{sol.x, sol.objective};
    for (double z : out.z)
        if (z > 1.0 + lp_feasibility_tolerance) throw std::logic_error("exploration_values: z above 1");
    return out;
}

struct DominatingSetSize {
    std::size_t size = 0;
    bool exact = true;  // false: greedy upper bound
};

/// Minimum dominating set size. Exact subset enumeration (by increasing size)
/// up to 20 nodes; above that the greedy cover size, flagged as a bound.
inline DominatingSetSize min_dominating_set_size(const Graph& g) {
    const std::size_t n = g.size();
    if (n == 0) return {0, true};
    constexpr std::size_t exact_limit = 20;
    if (n <= exact_limit) {
        std::vector<std::uint32_t> cover(n);
        for (ArmId i = 0; i < n; ++i) {
            cover[i] = std::uint32_t{1} << i;
            for (ArmId j : g.neighbors(i)) cover[i] |= std::uint32_t{1} << j;
        }
        const std::uint32_t all = n == 32 ? ~0U : (std::uint32_t{1} << n) - 1;
        // Walk subsets of each size k in lexicographic order of index tuples.
        for (std::size_t k = 1; k <= n; ++k) {
            std::vector<std::size_t> idx(k);
            for (std::size_t a = 0; a < k; ++a) idx[a] = a;
            while (true) {
                std::uint32_t covered = 0;
                for (auto a : idx) covered |= cover[a];
                if (covered == all) return {k, true};
                std::size_t pos = k;
                while (pos > 0 && idx[pos - 1] == n - k + pos - 1) --pos;
                if (pos == 0) break;
                ++idx[pos - 1];
                for (std::size_t a = pos; a < k; ++a) idx[a] = idx[a - 1] + 1;
            }
        }
        return {n, true};
    }
    NodeSet uncovered(n);
    uncovered.set();
    std::size_t picked = 0;
    while (uncovered.any()) {
        std::size_t best = 0, best_gain = 0;
        for (ArmId i = 0; i < n; ++i) {
            const auto gain = (g.closed_neighborhood(i) & uncovered).count();
            if (gain > best_gain) {
                best_gain = gain;
                best = i;
            }
        }
        uncovered &= ~g.closed_neighborhood(best);
        ++picked;
    }
    return {picked, false};
}

}  // namespace lsdt
