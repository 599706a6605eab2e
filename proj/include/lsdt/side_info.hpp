#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "lsdt/graph.hpp"
#include "lsdt/random.hpp"
#include "lsdt/uig.hpp"

namespace lsdt {

/**
 * Partially revealed UIG: revealed-similar (S) and revealed-dissimilar (D)
 * pairs over K arms. A pair in neither set has an unknown relation.
 *
 * Pairs are stored as (min, max) keys in hash sets. The S pairs are mirrored
 * into an adjacency-bitset graph for common-neighbor queries.
 */
class SideInfoGraph {
public:
    using Pair = std::pair<ArmId, ArmId>;

    explicit SideInfoGraph(std::size_t k = 0) : k_(k), similar_graph_(k) {}

    std::size_t size() const noexcept { return k_; }

    void add_similar(ArmId i, ArmId j) {
        const auto key = make_key(i, j);
        if (d_.count(key)) throw std::invalid_argument("pair already revealed dissimilar");
        s_.insert(key);
        similar_graph_.add_edge(i, j);
    }

    void add_dissimilar(ArmId i, ArmId j) {
        const auto key = make_key(i, j);
        if (s_.count(key)) throw std::invalid_argument("pair already revealed similar");
        d_.insert(key);
    }

    bool similar(ArmId i, ArmId j) const { return i != j && s_.count(key_of(i, j)) > 0; }
    bool dissimilar(ArmId i, ArmId j) const { return i != j && d_.count(key_of(i, j)) > 0; }
    bool known(ArmId i, ArmId j) const { return similar(i, j) || dissimilar(i, j); }

    std::size_t similar_count() const noexcept { return s_.size(); }
    std::size_t dissimilar_count() const noexcept { return d_.size(); }

    std::vector<Pair> similar_pairs() const { return sorted_pairs(s_); }
    std::vector<Pair> dissimilar_pairs() const { return sorted_pairs(d_); }

    /// Graph over all K arms whose edges are the S pairs.
    const Graph& similarity_graph() const noexcept { return similar_graph_; }

    /// Complete side information of a fully known UIG.
    static SideInfoGraph complete(const Graph& uig) {
        SideInfoGraph sig(uig.size());
        for (ArmId i = 0; i < uig.size(); ++i)
            for (ArmId j = i + 1; j < uig.size(); ++j) {
                if (uig.has_edge(i, j))
                    sig.add_similar(i, j);
                else
                    sig.add_dissimilar(i, j);
            }
        return sig;
    }

private:
    std::uint64_t key_of(ArmId i, ArmId j) const {
        if (i > j) std::swap(i, j);
        return static_cast<std::uint64_t>(i) * k_ + j;
    }

    std::uint64_t make_key(ArmId i, ArmId j) const {
        if (i >= k_ || j >= k_) throw std::out_of_range("side-info node id out of range");
        if (i == j) throw std::invalid_argument("side-info self-loop");
        return key_of(i, j);
    }

    std::vector<Pair> sorted_pairs(const std::unordered_set<std::uint64_t>& set) const {
        std::vector<Pair> out;
        out.reserve(set.size());
        for (auto key : set) out.emplace_back(key / k_, key % k_);
        std::sort(out.begin(), out.end());
        return out;
    }

    std::size_t k_;
    std::unordered_set<std::uint64_t> s_;
    std::unordered_set<std::uint64_t> d_;
    Graph similar_graph_;
};

struct RevealModel {
    double p_similar = 1.0;
    double p_dissimilar = 1.0;
    double kappa = 1.0;

    void validate() const {
        if (!(p_similar >= 0.0 && p_similar <= 1.0) || !(p_dissimilar >= 0.0 && p_dissimilar <= 1.0))
            throw std::invalid_argument("reveal probabilities must lie in [0, 1]");
        if (!(kappa > 0.0)) throw std::invalid_argument("kappa must be positive");
    }
};

/// Each UIG edge is revealed as S with probability p_S, each non-edge as D
/// with probability p_D, independently. Pairs are visited in (i, j), i < j
/// lexicographic order, one uniform each.
inline SideInfoGraph reveal(const Graph& uig, const RevealModel& model, RandomStream& rng) {
    model.validate();
    SideInfoGraph sig(uig.size());
    for (ArmId i = 0; i < uig.size(); ++i)
        for (ArmId j = i + 1; j < uig.size(); ++j) {
            if (uig.has_edge(i, j)) {
                if (rng.bernoulli(model.p_similar)) sig.add_similar(i, j);
            } else if (rng.bernoulli(model.p_dissimilar)) {
                sig.add_dissimilar(i, j);
            }
        }
    return sig;
}

/// Offline elimination: drop every arm similar to two mutually dissimilar
/// arms. Driven by the D pairs: for each (j, k) in D, every common S-neighbor
/// of j and k is removed. Returns the surviving arms, ascending.
inline std::vector<ArmId> triangle_eliminate(const SideInfoGraph& sig) {
    const Graph& s = sig.similarity_graph();
    NodeSet eliminated(sig.size());
    for (auto [j, k] : sig.dissimilar_pairs()) eliminated |= s.open_neighborhood(j) & s.open_neighborhood(k);
    std::vector<ArmId> out;
    for (ArmId i = 0; i < sig.size(); ++i)
        if (!eliminated.test(i)) out.push_back(i);
    return out;
}

/// Similarity graph restricted to a subset of arms. Local node k is arm nodes[k].
struct Subgraph {
    Graph graph;
    std::vector<ArmId> nodes;
};

inline Subgraph similarity_subgraph(const SideInfoGraph& sig, std::span<const ArmId> arms) {
    for (ArmId a : arms)
        if (a >= sig.size()) throw std::out_of_range("similarity_subgraph: arm out of range");
    return {sig.similarity_graph().induced(arms), std::vector<ArmId>(arms.begin(), arms.end())};
}

/// Candidate set by exhaustive completion of the unknown pairs, for K <= 6.
/// Every completion that is a UIG contributes its left anchors.
inline std::vector<ArmId> brute_force_candidate_set(const SideInfoGraph& sig) {
    constexpr std::size_t max_nodes = 6;
    const std::size_t k = sig.size();
    if (k > max_nodes) throw std::invalid_argument("brute_force_candidate_set: at most 6 nodes supported");
    std::vector<SideInfoGraph::Pair> unknown;
    for (ArmId i = 0; i < k; ++i)
        for (ArmId j = i + 1; j < k; ++j)
            if (!sig.known(i, j)) unknown.emplace_back(i, j);

    std::vector<bool> anchor(k, false);
    const std::uint64_t completions = std::uint64_t{1} << unknown.size();
    for (std::uint64_t mask = 0; mask < completions; ++mask) {
        Graph g = sig.similarity_graph();
        for (std::size_t b = 0; b < unknown.size(); ++b)
            if (mask >> b & 1U) g.add_edge(unknown[b].first, unknown[b].second);
        for (ArmId a : brute_force_left_anchors(g).anchors) anchor[a] = true;
    }
    std::vector<ArmId> out;
    for (ArmId i = 0; i < k; ++i)
        if (anchor[i]) out.push_back(i);
    return out;
}

struct AssumptionReport {
    bool interior_diversity = true;   // every interior class has separated neighbors on both sides
    bool class_size = true;           // every class has at least kappa * ln K members
    std::optional<bool> reveal_rate;  // p_S^2 p_D >= 1 - exp(-2 / kappa), if a model was given
    std::size_t class_count = 0;
};

/**
 * Checks the structural conditions under which offline elimination recovers
 * the ground-truth candidate set. Needs the generating means to order the
 * equivalence classes along the line; classes are ordered within each
 * connected component. This is a diagnostic, not part of any learner.
 */
inline AssumptionReport check_assumptions(const Graph& uig, std::span<const double> means, double kappa,
                                          const std::optional<RevealModel>& model = std::nullopt) {
    if (means.size() != uig.size())
        throw std::invalid_argument("check_assumptions: means are required for every arm");
    if (!(kappa > 0.0)) throw std::invalid_argument("check_assumptions: kappa must be positive");

    const auto partition = equivalence_partition(uig);
    AssumptionReport report;
    report.class_count = partition.classes.size();

    const double min_size = kappa * std::log(static_cast<double>(uig.size()));
    for (const auto& cls : partition.classes)
        if (static_cast<double>(cls.size()) < min_size * (1.0 - 1e-12)) report.class_size = false;

    auto connected = [&](std::size_t a, std::size_t b) {
        return uig.has_edge(partition.classes[a].front(), partition.classes[b].front());
    };
    for (const auto& comp : connected_components(uig)) {
        std::vector<std::size_t> order;
        for (ArmId v : comp) {
            const auto c = partition.class_of[v];
            if (std::find(order.begin(), order.end(), c) == order.end()) order.push_back(c);
        }
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return means[partition.classes[a].front()] < means[partition.classes[b].front()];
        });
        for (std::size_t pos = 1; pos + 1 < order.size(); ++pos) {
            bool found = false;
            for (std::size_t lo = 0; lo < pos && !found; ++lo) {
                if (!connected(order[lo], order[pos])) continue;
                for (std::size_t hi = pos + 1; hi < order.size(); ++hi)
                    if (connected(order[hi], order[pos]) && !connected(order[lo], order[hi])) {
                        found = true;
                        break;
                    }
            }
            if (!found) report.interior_diversity = false;
        }
    }

    if (model) {
        model->validate();
        const double lhs = model->p_similar * model->p_similar * model->p_dissimilar;
        report.reveal_rate = lhs >= 1.0 - std::exp(-2.0 / kappa);
    }
    return report;
}

// Side-info exchange format:
//   K <count>
//   S i j
//   D i j
// 0-based ids. Blank lines and lines starting with '#' are ignored.

inline SideInfoGraph read_side_info(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    std::optional<SideInfoGraph> sig;
    auto fail = [&](const std::string& what) {
        throw std::runtime_error("side-info line " + std::to_string(line_no) + ": " + what);
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (!sig) {
            long long k = -1;
            if (tag != "K" || !(ls >> k) || k < 0) fail("expected header 'K <count>'");
            sig.emplace(static_cast<std::size_t>(k));
            continue;
        }
        long long i = -1, j = -1;
        if (!(ls >> i >> j)) fail("expected '<S|D> i j'");
        if (i < 0 || j < 0) fail("negative node id");
        try {
            if (tag == "S")
                sig->add_similar(static_cast<ArmId>(i), static_cast<ArmId>(j));
            else if (tag == "D")
                sig->add_dissimilar(static_cast<ArmId>(i), static_cast<ArmId>(j));
            else
                fail("unknown edge type '" + tag + "'");
        } catch (const std::logic_error& e) {
            fail(e.what());
        }
    }
    if (!sig) throw std::runtime_error("side-info: missing 'K <count>' header");
    return std::move(*sig);
}

inline void write_side_info(std::ostream& out, const SideInfoGraph& sig) {
    out << "K " << sig.size() << '\n';
    for (auto [i, j] : sig.similar_pairs()) out << "S " << i << ' ' << j << '\n';
    for (auto [i, j] : sig.dissimilar_pairs()) out << "D " << i << ' ' << j << '\n';
}

}  // namespace lsdt
