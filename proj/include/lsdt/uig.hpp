#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>
#include <vector>

#include "lsdt/graph.hpp"

namespace lsdt {

/// Partition of the nodes by identical closed neighborhoods. Classes are
/// listed in order of their smallest member; members are ascending.
struct EquivalencePartition {
    std::vector<std::vector<ArmId>> classes;
    std::vector<std::size_t> class_of;
};

inline EquivalencePartition equivalence_partition(const Graph& g) {
    EquivalencePartition p;
    p.class_of.assign(g.size(), 0);
    std::map<NodeSet, std::size_t> index;
    for (ArmId i = 0; i < g.size(); ++i) {
        auto [it, inserted] = index.try_emplace(g.closed_neighborhood(i), p.classes.size());
        if (inserted) p.classes.emplace_back();
        p.classes[it->second].push_back(i);
        p.class_of[i] = it->second;
    }
    return p;
}

/// BFS levels from `start`, neighbors expanded in ascending id order.
inline std::vector<std::vector<ArmId>> bfs_levels(const Graph& g, ArmId start) {
    std::vector<std::vector<ArmId>> levels;
    std::vector<bool> seen(g.size(), false);
    seen[start] = true;
    levels.push_back({start});
    while (true) {
        std::vector<ArmId> next;
        for (ArmId u : levels.back())
            for (ArmId v : g.neighbors(u))
                if (!seen[v]) {
                    seen[v] = true;
                    next.push_back(v);
                }
        if (next.empty()) break;
        std::sort(next.begin(), next.end());
        levels.push_back(std::move(next));
    }
    return levels;
}

/// Components in order of their smallest node; members ascending.
inline std::vector<std::vector<ArmId>> connected_components(const Graph& g) {
    std::vector<std::vector<ArmId>> comps;
    std::vector<bool> seen(g.size(), false);
    for (ArmId s = 0; s < g.size(); ++s) {
        if (seen[s]) continue;
        std::vector<ArmId> comp;
        for (auto& level : bfs_levels(g, s))
            for (ArmId v : level) {
                seen[v] = true;
                comp.push_back(v);
            }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

struct CandidateSetResult {
    std::vector<ArmId> candidate_set;
    /// Equivalence classes whose union is the candidate set: one or two per
    /// component, ordered by smallest member.
    std::vector<std::vector<ArmId>> anchor_classes;
};

namespace detail {

// One pass of the end-vertex search: BFS from `start`, keep the
// minimum-degree nodes of the last level.
inline std::vector<ArmId> last_level_min_degree(const Graph& g, ArmId start) {
    const auto levels = bfs_levels(g, start);
    const auto& last = levels.back();
    std::size_t best = g.size();
    for (ArmId v : last) best = std::min(best, g.degree(v));
    std::vector<ArmId> out;
    for (ArmId v : last)
        if (g.degree(v) == best) out.push_back(v);
    return out;
}

}  // namespace detail

/**
 * Candidate set of a fully revealed UIG, i.e. its set of left anchors.
 *
 * Per connected component: BFS from the smallest node, keep the last level's
 * minimum-degree nodes; BFS again from the smallest of those and keep the
 * same. The union of both passes, closed under neighborhood equivalence, is
 * the component's anchor set. The whole-graph answer is the union over
 * components. A complete component contributes all of its nodes.
 */
inline CandidateSetResult left_anchor_candidate_set(const Graph& g) {
    CandidateSetResult result;
    if (g.size() == 0) return result;
    const auto partition = equivalence_partition(g);
    std::vector<bool> is_anchor_class(partition.classes.size(), false);
    for (const auto& comp : connected_components(g)) {
        const auto first = detail::last_level_min_degree(g, comp.front());
        const auto second = detail::last_level_min_degree(g, first.front());
        for (ArmId v : first) is_anchor_class[partition.class_of[v]] = true;
        for (ArmId v : second) is_anchor_class[partition.class_of[v]] = true;
    }
    for (std::size_t c = 0; c < partition.classes.size(); ++c) {
        if (!is_anchor_class[c]) continue;
        result.anchor_classes.push_back(partition.classes[c]);
        for (ArmId v : partition.classes[c]) result.candidate_set.push_back(v);
    }
    std::sort(result.candidate_set.begin(), result.candidate_set.end());
    return result;
}

struct BruteForceAnchors {
    std::vector<ArmId> anchors;
    bool is_uig = true;
};

namespace detail {

// Extends `order` one node at a time, checking every triple whose largest
// position is the node just placed. An order reaching full length is a
// proper-interval (umbrella) ordering.
inline bool extend_umbrella(const Graph& g, std::vector<ArmId>& order, std::vector<bool>& used) {
    const std::size_t n = g.size();
    const std::size_t k = order.size();
    if (k == n) return true;
    for (ArmId v = 0; v < n; ++v) {
        if (used[v]) continue;
        bool ok = true;
        for (std::size_t i = 0; i < k && ok; ++i) {
            if (!g.has_edge(order[i], v)) continue;
            for (std::size_t j = i + 1; j < k; ++j)
                if (!g.has_edge(order[i], order[j]) || !g.has_edge(order[j], v)) {
                    ok = false;
                    break;
                }
        }
        if (!ok) continue;
        used[v] = true;
        order.push_back(v);
        if (extend_umbrella(g, order, used)) return true;
        order.pop_back();
        used[v] = false;
    }
    return false;
}

}  // namespace detail

/// Exhaustive left-anchor search over node orderings, for K <= 12. A node is a
/// left anchor iff some umbrella ordering starts with it. A graph with no
/// umbrella ordering at all is reported as not a UIG.
inline BruteForceAnchors brute_force_left_anchors(const Graph& g) {
    constexpr std::size_t max_nodes = 12;
    if (g.size() > max_nodes)
        throw std::invalid_argument("brute_force_left_anchors: at most 12 nodes supported");
    BruteForceAnchors out;
    for (ArmId s = 0; s < g.size(); ++s) {
        std::vector<ArmId> order{s};
        std::vector<bool> used(g.size(), false);
        used[s] = true;
        if (detail::extend_umbrella(g, order, used)) out.anchors.push_back(s);
    }
    out.is_uig = g.size() == 0 || !out.anchors.empty();
    return out;
}

}  // namespace lsdt
