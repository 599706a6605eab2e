#pragma once

#include <cmath>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "lsdt/reward_models.hpp"

namespace lsdt {

using NodeSet = boost::dynamic_bitset<std::uint64_t>;

/// Simple undirected graph with one adjacency bitset per node. Self-loops are
/// never stored; closed neighborhoods are formed on demand.
class Graph {
public:
    explicit Graph(std::size_t n = 0) : rows_(n, NodeSet(n)) {}

    std::size_t size() const noexcept { return rows_.size(); }

    void add_edge(ArmId i, ArmId j) {
        check(i);
        check(j);
        if (i == j) return;
        rows_[i].set(j);
        rows_[j].set(i);
    }

    bool has_edge(ArmId i, ArmId j) const { return i != j && rows_[i].test(j); }

    std::size_t degree(ArmId i) const { return rows_[i].count(); }

    const NodeSet& open_neighborhood(ArmId i) const { return rows_[i]; }

    NodeSet closed_neighborhood(ArmId i) const {
        NodeSet n = rows_[i];
        n.set(i);
        return n;
    }

    std::vector<ArmId> neighbors(ArmId i) const {
        std::vector<ArmId> out;
        out.reserve(rows_[i].count());
        for (auto j = rows_[i].find_first(); j != NodeSet::npos; j = rows_[i].find_next(j))
            out.push_back(j);
        return out;
    }

    std::size_t edge_count() const {
        std::size_t twice = 0;
        for (const auto& r : rows_) twice += r.count();
        return twice / 2;
    }

    std::vector<std::pair<ArmId, ArmId>> edges() const {
        std::vector<std::pair<ArmId, ArmId>> out;
        for (ArmId i = 0; i < size(); ++i)
            for (auto j = rows_[i].find_next(i); j != NodeSet::npos; j = rows_[i].find_next(j))
                out.emplace_back(i, j);
        return out;
    }

    bool is_complete() const {
        const std::size_t n = size();
        return n == 0 || edge_count() == n * (n - 1) / 2;
    }

    /// Subgraph induced by `nodes`; local index k corresponds to nodes[k].
    Graph induced(std::span<const ArmId> nodes) const {
        Graph g(nodes.size());
        for (std::size_t a = 0; a < nodes.size(); ++a)
            for (std::size_t b = a + 1; b < nodes.size(); ++b)
                if (has_edge(nodes[a], nodes[b])) g.add_edge(a, b);
        return g;
    }

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    void check(ArmId i) const {
        if (i >= size()) throw std::out_of_range("node id " + std::to_string(i) + " out of range");
    }

    std::vector<NodeSet> rows_;
};

/// Ground-truth similarity graph. Built from means it carries the threshold
/// it was built with; built from an edge list it does not.
class Uig : public Graph {
public:
    explicit Uig(std::size_t n = 0) : Graph(n) {}
    Uig(Graph g, std::optional<double> epsilon) : Graph(std::move(g)), epsilon_(epsilon) {}

    std::optional<double> epsilon() const noexcept { return epsilon_; }

private:
    std::optional<double> epsilon_;
};

/// Edge (i, j) iff |mu_i - mu_j| < epsilon, strictly.
inline Uig build_uig(std::span<const double> means, double epsilon) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("build_uig: epsilon must be positive");
    Graph g(means.size());
    for (ArmId i = 0; i < means.size(); ++i)
        for (ArmId j = i + 1; j < means.size(); ++j)
            if (std::abs(means[i] - means[j]) < epsilon) g.add_edge(i, j);
    return Uig(std::move(g), epsilon);
}

inline Uig build_uig(const BanditInstance& instance) {
    return build_uig(instance.means(), instance.epsilon());
}

// Edge-list exchange format:
//   K <count>
//   i j
//   ...
// 0-based ids, one pair per line. Blank lines and lines starting with '#'
// are ignored.

inline Graph read_edge_list(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    std::optional<Graph> g;
    auto fail = [&](const std::string& what) {
        throw std::runtime_error("edge list line " + std::to_string(line_no) + ": " + what);
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        if (!g) {
            std::string tag;
            long long k = -1;
            if (!(ls >> tag >> k) || tag != "K" || k < 0) fail("expected header 'K <count>'");
            g.emplace(static_cast<std::size_t>(k));
            continue;
        }
        long long i = -1, j = -1;
        if (!(ls >> i >> j)) fail("expected 'i j'");
        std::string rest;
        if (ls >> rest) fail("trailing content");
        if (i < 0 || j < 0 || static_cast<std::size_t>(i) >= g->size() ||
            static_cast<std::size_t>(j) >= g->size())
            fail("node id out of range");
        if (i == j) fail("self-loop");
        g->add_edge(static_cast<ArmId>(i), static_cast<ArmId>(j));
    }
    if (!g) throw std::runtime_error("edge list: missing 'K <count>' header");
    return std::move(*g);
}

inline void write_edge_list(std::ostream& out, const Graph& g) {
    out << "K " << g.size() << '\n';
    for (auto [i, j] : g.edges()) out << i << ' ' << j << '\n';
}

}  // namespace lsdt
