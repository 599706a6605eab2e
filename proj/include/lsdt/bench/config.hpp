#pragma once

#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "lsdt/policy_factory.hpp"
#include "lsdt/reward_models.hpp"

namespace lsdt {

struct MeanGenerator {
    enum class Type { Uniform, Explicit, Clustered };
    Type type = Type::Uniform;
    double lo = 0.0, hi = 1.0;    // uniform
    std::vector<double> means;    // explicit
    std::vector<double> centers;  // clustered: one center per class
    std::size_t per_class = 0;    // clustered
};

struct SideMode {
    bool partial = false;
    double p_similar = 1.0;
    double p_dissimilar = 1.0;
};

struct OutputPaths {
    std::string csv;
    std::string svg;
};

/**
 * One simulation recipe. JSON layout (every key optional unless noted):
 *
 *   K, T (required), epsilon (required)
 *   mean_generator: {type: uniform, lo, hi} | {type: explicit, means}
 *                 | {type: clustered, m, centers, per_class}
 *   distribution:   {kind: gaussian|bernoulli, sigma}
 *   side_mode:      {type: complete} | {type: partial, p_S, p_D}
 *   policies:       [names]
 *   params:         {lambda, c_idx, beta, ucb_c}
 *   replications, seed, fixed_instance
 *   output:         {csv, svg}
 *
 * Unknown keys are errors. K may be omitted for explicit and clustered
 * generators; otherwise it must agree with them.
 */
struct ExperimentConfig {
    std::size_t K = 0;
    std::size_t T = 0;
    double epsilon = 0.0;
    MeanGenerator mean_generator;
    DistributionKind distribution = DistributionKind::Gaussian;
    double sigma = 1.0;
    SideMode side_mode;
    std::vector<std::string> policies = {"ucb1", "lsdt-csi"};
    PolicyParams params;
    std::size_t replications = 1;
    std::uint64_t seed = 1;
    bool fixed_instance = false;
    OutputPaths output;

    void validate() const {
        if (K == 0) throw std::invalid_argument("config: K must be positive");
        if (T == 0) throw std::invalid_argument("config: T must be positive");
        if (!(epsilon > 0.0)) throw std::invalid_argument("config: epsilon must be positive");
        if (replications == 0) throw std::invalid_argument("config: replications must be at least 1");
        if (policies.empty()) throw std::invalid_argument("config: no policies");
        const auto& g = mean_generator;
        switch (g.type) {
            case MeanGenerator::Type::Uniform:
                if (!(g.lo <= g.hi)) throw std::invalid_argument("config: uniform generator needs lo <= hi");
                break;
            case MeanGenerator::Type::Explicit:
                if (g.means.size() != K) throw std::invalid_argument("config: explicit means do not match K");
                break;
            case MeanGenerator::Type::Clustered:
                if (g.centers.empty() || g.per_class == 0 || g.centers.size() * g.per_class != K)
                    throw std::invalid_argument("config: clustered generator does not match K");
                break;
        }
        if (distribution == DistributionKind::Gaussian && !(sigma > 0.0))
            throw std::invalid_argument("config: sigma must be positive");
        if (distribution == DistributionKind::BoundedEmpirical)
            throw std::invalid_argument("config: distribution kind must be gaussian or bernoulli");
        if (side_mode.partial) {
            if (!(side_mode.p_similar >= 0.0 && side_mode.p_similar <= 1.0) ||
                !(side_mode.p_dissimilar >= 0.0 && side_mode.p_dissimilar <= 1.0))
                throw std::invalid_argument("config: reveal probabilities must lie in [0, 1]");
        }
        if (!(params.lambda > 0.0) || !(params.c_idx > 0.0) || !(params.beta > 0.0) || !(params.ucb_c > 0.0))
            throw std::invalid_argument("config: policy parameters must be positive");
        for (const auto& p : policies) {
            if (!is_policy_name(p)) throw std::invalid_argument("config: unknown policy '" + p + "'");
            if (needs_candidates(p) && side_mode.partial)
                throw std::invalid_argument("config: " + p + " needs complete side information");
            // Round-robin initialization needs one step per arm.
            if ((p == "ucb1") && T < K) throw std::invalid_argument("config: T < K for " + p);
        }
    }
};

namespace detail {

inline void reject_unknown(const nlohmann::json& j, std::initializer_list<const char*> allowed,
                           const std::string& where) {
    if (!j.is_object()) throw std::invalid_argument("config: " + where + " must be an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || it.key() == a;
        if (!ok) throw std::invalid_argument("config: unknown key '" + it.key() + "' in " + where);
    }
}

template <class T>
void read_if(const nlohmann::json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace detail

inline ExperimentConfig parse_config(const nlohmann::json& j) {
    using detail::read_if;
    detail::reject_unknown(j,
                           {"K", "T", "epsilon", "mean_generator", "distribution", "side_mode", "policies", "params",
                            "replications", "seed", "fixed_instance", "output"},
                           "config");
    ExperimentConfig c;
    try {
        read_if(j, "K", c.K);
        c.T = j.at("T").get<std::size_t>();
        c.epsilon = j.at("epsilon").get<double>();
        if (j.contains("mean_generator")) {
            const auto& g = j.at("mean_generator");
            detail::reject_unknown(g, {"type", "lo", "hi", "means", "m", "centers", "per_class"}, "mean_generator");
            const auto type = g.at("type").get<std::string>();
            auto& mg = c.mean_generator;
            if (type == "uniform") {
                mg.type = MeanGenerator::Type::Uniform;
                read_if(g, "lo", mg.lo);
                read_if(g, "hi", mg.hi);
            } else if (type == "explicit") {
                mg.type = MeanGenerator::Type::Explicit;
                mg.means = g.at("means").get<std::vector<double>>();
                if (c.K == 0) c.K = mg.means.size();
            } else if (type == "clustered") {
                mg.type = MeanGenerator::Type::Clustered;
                mg.centers = g.at("centers").get<std::vector<double>>();
                mg.per_class = g.at("per_class").get<std::size_t>();
                if (g.contains("m") && g.at("m").get<std::size_t>() != mg.centers.size())
                    throw std::invalid_argument("config: clustered m does not match the number of centers");
                if (c.K == 0) c.K = mg.centers.size() * mg.per_class;
            } else {
                throw std::invalid_argument("config: unknown mean generator '" + type + "'");
            }
        }
        if (j.contains("distribution")) {
            const auto& d = j.at("distribution");
            detail::reject_unknown(d, {"kind", "sigma"}, "distribution");
            const auto kind = d.at("kind").get<std::string>();
            if (kind == "gaussian")
                c.distribution = DistributionKind::Gaussian;
            else if (kind == "bernoulli")
                c.distribution = DistributionKind::Bernoulli;
            else
                throw std::invalid_argument("config: unknown distribution kind '" + kind + "'");
            read_if(d, "sigma", c.sigma);
        }
        if (j.contains("side_mode")) {
            const auto& s = j.at("side_mode");
            detail::reject_unknown(s, {"type", "p_S", "p_D"}, "side_mode");
            const auto type = s.at("type").get<std::string>();
            if (type == "partial") {
                c.side_mode.partial = true;
                c.side_mode.p_similar = s.at("p_S").get<double>();
                c.side_mode.p_dissimilar = s.at("p_D").get<double>();
            } else if (type != "complete") {
                throw std::invalid_argument("config: unknown side mode '" + type + "'");
            }
        }
        read_if(j, "policies", c.policies);
        if (j.contains("params")) {
            const auto& p = j.at("params");
            detail::reject_unknown(p, {"lambda", "c_idx", "beta", "ucb_c"}, "params");
            read_if(p, "lambda", c.params.lambda);
            read_if(p, "c_idx", c.params.c_idx);
            read_if(p, "beta", c.params.beta);
            read_if(p, "ucb_c", c.params.ucb_c);
        }
        read_if(j, "replications", c.replications);
        read_if(j, "seed", c.seed);
        read_if(j, "fixed_instance", c.fixed_instance);
        if (j.contains("output")) {
            const auto& o = j.at("output");
            detail::reject_unknown(o, {"csv", "svg"}, "output");
            read_if(o, "csv", c.output.csv);
            read_if(o, "svg", c.output.svg);
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
    c.validate();
    return c;
}

inline ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("config '" + path + "': " + e.what());
    }
    return parse_config(j);
}

}  // namespace lsdt
