#pragma once

#include <array>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "lsdt/lsdt_csi.hpp"
#include "lsdt/lsdt_psi.hpp"
#include "lsdt/lsdt_ts.hpp"
#include "lsdt/policy.hpp"

namespace lsdt {

inline constexpr std::array<std::string_view, 6> policy_names = {"ucb1",     "ts",          "lsdt-csi",
                                                                  "lsdt-psi", "lsdt-ts-csi", "lsdt-ts-psi"};

/// Offline products of partial side information: survivors B0, the
/// similarity graph induced on them and its exploration values.
struct PartialProducts {
    Subgraph subgraph;
    ExplorationValues z;
};

inline PartialProducts partial_products(const SideInfoGraph& sig) {
    const auto b0 = triangle_eliminate(sig);
    auto sub = similarity_subgraph(sig, b0);
    auto z = exploration_values(sub.graph);
    return {std::move(sub), std::move(z)};
}

/// Whatever side products a run has available. Each learner requires one kind.
struct SideProducts {
    std::optional<CandidateSetResult> candidates;
    std::optional<PartialProducts> partial;
};

struct PolicyParams {
    double lambda = 0.125;
    double c_idx = 8.0;
    double beta = 0.5;
    double ucb_c = 2.0;
};

inline bool needs_candidates(std::string_view name) { return name == "lsdt-csi" || name == "lsdt-ts-csi"; }
inline bool needs_partial(std::string_view name) { return name == "lsdt-psi" || name == "lsdt-ts-psi"; }

inline bool is_policy_name(std::string_view name) {
    for (auto n : policy_names)
        if (n == name) return true;
    return false;
}

inline std::unique_ptr<Policy> make_policy(std::string_view name, std::size_t k, std::size_t horizon, double epsilon,
                                           const SideProducts& side, const PolicyParams& params, std::uint64_t seed) {
    auto need_candidates = [&]() -> const CandidateSetResult& {
        if (!side.candidates) throw std::invalid_argument(std::string(name) + " requires complete side information");
        return *side.candidates;
    };
    auto need_partial = [&]() -> const PartialProducts& {
        if (!side.partial) throw std::invalid_argument(std::string(name) + " requires offline elimination products");
        return *side.partial;
    };
    if (name == "ucb1") return std::make_unique<Ucb1>(k, params.ucb_c);
    if (name == "ts") return std::make_unique<ThompsonBernoulli>(k, seed);
    if (name == "lsdt-csi") return std::make_unique<LsdtCsi>(k, need_candidates(), params.c_idx);
    if (name == "lsdt-ts-csi") return std::make_unique<LsdtTsCsi>(k, need_candidates(), seed);
    if (name == "lsdt-psi") {
        const auto& p = need_partial();
        return std::make_unique<LsdtPsi>(k, p.subgraph, p.z, horizon, epsilon,
                                         LsdtPsi::Params{params.lambda, params.beta});
    }
    if (name == "lsdt-ts-psi") return std::make_unique<LsdtTsPsi>(k, need_partial().subgraph, horizon, epsilon, seed);
    throw std::invalid_argument("unknown policy '" + std::string(name) + "'");
}

}  // namespace lsdt
