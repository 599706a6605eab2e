#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lsdt/lsdt.hpp"

namespace {

using namespace lsdt;

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        out.push_back(std::stod(item, &used));
        if (used != item.size()) throw std::invalid_argument("bad number '" + item + "' in list");
    }
    return out;
}

// Numeric lists accept "a,b,c" or a range "start:stop:step" (inclusive).
std::vector<double> parse_grid(const std::string& text) {
    if (text.find(':') == std::string::npos) return parse_list(text);
    std::vector<double> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(std::stod(item));
    if (parts.size() != 3 || !(parts[2] > 0.0)) throw std::invalid_argument("grid range must be start:stop:step");
    std::vector<double> out;
    const auto steps = static_cast<long long>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9));
    for (long long k = 0; k <= steps; ++k) out.push_back(parts[0] + static_cast<double>(k) * parts[2]);
    return out;
}

int run_simulate(const std::string& config_path, const std::string& csv_override, const std::string& svg_override) {
    auto config = load_config(config_path);
    if (!csv_override.empty()) config.output.csv = csv_override;
    if (!svg_override.empty()) config.output.svg = svg_override;
    const double sigma = config.distribution == DistributionKind::Bernoulli ? 0.5 : config.sigma;
    for (const auto& p : config.policies)
        if (p == "lsdt-csi")
            if (auto warning = validate_index_constant(config.params.c_idx, sigma)) std::cerr << "warning: " << *warning << '\n';

    const auto result = monte_carlo(config);
    if (config.output.csv.empty())
        write_regret_csv(std::cout, result.summary);
    else
        write_file(config.output.csv, [&](std::ostream& out) { write_regret_csv(out, result.summary); });
    if (!config.output.svg.empty())
        write_file(config.output.svg, [&](std::ostream& out) {
            write_svg(out, regret_series(result.summary), "t", "mean cumulative regret");
        });
    for (std::size_t p = 0; p < result.policies.size(); ++p) {
        const auto s = result.final_regret(p);
        std::cerr << result.policies[p] << ": final regret " << format_number(s.mean) << " +/- "
                  << format_number(s.ci95) << " (" << s.n << " replications)\n";
    }
    return 0;
}

struct SweepArgs {
    std::string mode = "complete";
    std::string axis = "epsilon";
    std::string grid = "0.1:0.9:0.1";
    std::string csv;
    std::string svg;
    SweepSpec spec;
    double p = 0.8;
};

int run_candidate_size(SweepArgs args) {
    if (args.mode != "complete" && args.mode != "partial") throw std::invalid_argument("--mode must be complete or partial");
    args.spec.partial = args.mode == "partial";
    if (args.axis == "epsilon")
        args.spec.axis = SweepSpec::Axis::Epsilon;
    else if (args.axis == "K")
        args.spec.axis = SweepSpec::Axis::K;
    else if (args.axis == "p")
        args.spec.axis = SweepSpec::Axis::P;
    else
        throw std::invalid_argument("--axis must be epsilon, K or p");
    if (args.spec.axis == SweepSpec::Axis::P && !args.spec.partial)
        throw std::invalid_argument("--axis p needs --mode partial");
    args.spec.grid = parse_grid(args.grid);
    args.spec.p_similar = args.spec.p_dissimilar = args.p;
    const auto rows = sweep_candidate_size(args.spec);
    if (args.csv.empty())
        write_size_csv(std::cout, rows);
    else
        write_file(args.csv, [&](std::ostream& out) { write_size_csv(out, rows); });
    if (!args.svg.empty()) {
        SvgSeries series{args.spec.partial ? "|B0|" : "|B*|", {}, {}};
        for (const auto& r : rows) {
            series.x.push_back(r.x);
            series.y.push_back(r.stats.mean);
        }
        write_file(args.svg, [&](std::ostream& out) { write_svg(out, {series}, args.axis, "mean candidate set size"); });
    }
    return 0;
}

int run_bounds(const std::string& config_path) {
    const auto config = load_config(config_path);
    RandomStream rng(derive_seed(config.seed, 0, 0));
    const auto gen = generate_instance(config, rng);
    const double horizon = static_cast<double>(config.T);
    nlohmann::ordered_json out;
    out["K"] = config.K;
    out["T"] = config.T;
    out["epsilon"] = config.epsilon;

    const auto candidates = left_anchor_candidate_set(gen.uig);
    out["candidate_set_size"] = candidates.candidate_set.size();
    out["components"] = connected_components(gen.uig).size();
    try {
        out["lower_bound_constant"] = lower_bound_constant(gen.instance);
    } catch (const std::exception& e) {
        out["lower_bound_constant"] = nullptr;
        out["lower_bound_note"] = e.what();
    }
    try {
        out["csi_bound"] = regret_bound_csi(gen.instance, candidates, horizon);
    } catch (const std::exception& e) {
        out["csi_bound"] = nullptr;
        out["csi_bound_note"] = e.what();
    }
    const auto sig = config.side_mode.partial
                         ? reveal(gen.uig, {config.side_mode.p_similar, config.side_mode.p_dissimilar, 1.0}, rng)
                         : SideInfoGraph::complete(gen.uig);
    const auto products = partial_products(sig);
    out["b0_size"] = products.subgraph.nodes.size();
    out["exploration_total"] = products.z.total;
    const auto gamma = min_dominating_set_size(products.subgraph.graph);
    out["dominating_set_size"] = gamma.size;
    out["dominating_set_exact"] = gamma.exact;
    out["psi_bound"] = regret_bound_psi(gen.instance, products.subgraph, products.z, horizon, config.epsilon);
    std::cout << out.dump(2) << '\n';
    return 0;
}

struct ReplayArgs {
    std::string ratings;
    std::string bounds = "-10,10";
    double train_frac = 0.05;
    double alpha = 0.2;
    std::string policy = "lsdt-psi";
    std::size_t tmax = 2000;
    std::uint64_t seed = 1;
    std::optional<double> epsilon;
    double lambda = 1.0 / 32.0;
};

int run_replay(const ReplayArgs& args) {
    const auto b = parse_list(args.bounds);
    if (b.size() != 2) throw std::invalid_argument("--bounds must be lo,hi");
    const RatingBounds bounds{b[0], b[1]};
    const auto table = ingest_ratings_file(args.ratings, bounds);
    const auto split = split_ratings(table, args.train_frac, args.seed);
    if (split.warning) std::cerr << "warning: " << *split.warning << '\n';

    const auto distances = co_rating_distances(split.train);
    double epsilon = 0.0;
    if (args.epsilon) {
        epsilon = *args.epsilon;
    } else {
        epsilon = epsilon_search(distances, args.alpha).epsilon;
    }
    const auto estimated = classify_pairs(distances, epsilon, args.alpha);
    SideProducts side;
    side.partial = partial_products(estimated.side_info);
    PolicyParams params;
    params.lambda = args.lambda;
    const std::size_t k = table.item_count();
    auto policy = make_policy(args.policy, k, args.tmax, epsilon, side, params, derive_seed(args.seed, 1));
    RandomStream rng(derive_seed(args.seed, 2));
    const auto result = replay_evaluate(*policy, split.test.ratings, args.tmax, rng);

    nlohmann::ordered_json out;
    out["policy"] = args.policy;
    out["items"] = k;
    out["train_users"] = split.train.users.size();
    out["test_users"] = split.test.users.size();
    out["epsilon"] = epsilon;
    out["b0_size"] = side.partial->subgraph.nodes.size();
    out["matched"] = result.matched;
    out["scanned"] = result.scanned;
    if (result.average) {
        out["average_normalized"] = *result.average;
        out["average"] = bounds.denormalize(*result.average);
        out["ci95"] = result.ci95 * (bounds.hi - bounds.lo);
    } else {
        out["average"] = nullptr;
        std::cerr << "warning: no test event matched; average undefined\n";
    }
    std::cout << out.dump(2) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bandit experiments with similarity side information"};
    app.require_subcommand(1);

    std::string config_path, csv_override, svg_override;
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo regret curves for the policies of a config");
    simulate->add_option("--config", config_path, "JSON experiment config")->required()->check(CLI::ExistingFile);
    simulate->add_option("--csv", csv_override, "CSV output path (overrides the config)");
    simulate->add_option("--svg", svg_override, "SVG output path (overrides the config)");

    SweepArgs sweep;
    auto* cand = app.add_subcommand("candidate-size", "Mean candidate set size over a parameter grid");
    cand->add_option("--mode", sweep.mode, "complete or partial")->capture_default_str();
    cand->add_option("--axis", sweep.axis, "epsilon, K or p")->capture_default_str();
    cand->add_option("--grid", sweep.grid, "a,b,c or start:stop:step")->capture_default_str();
    cand->add_option("--K", sweep.spec.K, "number of arms")->capture_default_str();
    cand->add_option("--epsilon", sweep.spec.epsilon, "similarity threshold")->capture_default_str();
    cand->add_option("--p", sweep.p, "reveal probability for both edge types")->capture_default_str();
    cand->add_option("--lo", sweep.spec.lo, "lower end of the mean range")->capture_default_str();
    cand->add_option("--hi", sweep.spec.hi, "upper end of the mean range")->capture_default_str();
    cand->add_option("--replications", sweep.spec.replications, "instances per grid point")->capture_default_str();
    cand->add_option("--seed", sweep.spec.seed, "master seed")->capture_default_str();
    cand->add_option("--csv", sweep.csv, "CSV output path (stdout if omitted)");
    cand->add_option("--svg", sweep.svg, "SVG output path");

    std::string bounds_config;
    auto* bounds = app.add_subcommand("bounds", "Lower-bound constant and regret bounds for a config's first instance");
    bounds->add_option("--config", bounds_config, "JSON experiment config")->required()->check(CLI::ExistingFile);

    ReplayArgs replay;
    double replay_epsilon = 0.0;
    auto* rep = app.add_subcommand("replay", "Offline replay evaluation on a ratings log");
    rep->add_option("--ratings", replay.ratings, "user_id,item_id,rating CSV")->required()->check(CLI::ExistingFile);
    rep->add_option("--bounds", replay.bounds, "rating bounds lo,hi")->capture_default_str();
    rep->add_option("--train-frac", replay.train_frac, "fraction of users used for side information")->capture_default_str();
    rep->add_option("--alpha", replay.alpha, "confidence margin")->capture_default_str();
    rep->add_option("--policy", replay.policy, "policy name")->capture_default_str();
    rep->add_option("--tmax", replay.tmax, "matched steps to replay")->capture_default_str();
    rep->add_option("--seed", replay.seed, "seed for split, policy and shuffling")->capture_default_str();
    auto* eps_opt = rep->add_option("--epsilon", replay_epsilon, "fixed epsilon (searched when omitted)");
    rep->add_option("--lambda", replay.lambda, "exploration parameter of lsdt-psi")->capture_default_str();

    CLI11_PARSE(app, argc, argv);
    try {
        if (*simulate) return run_simulate(config_path, csv_override, svg_override);
        if (*cand) return run_candidate_size(sweep);
        if (*bounds) return run_bounds(bounds_config);
        if (*rep) {
            if (eps_opt->count() > 0) replay.epsilon = replay_epsilon;
            return run_replay(replay);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
