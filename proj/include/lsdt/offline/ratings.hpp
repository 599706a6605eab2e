#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lsdt/random.hpp"
#include "lsdt/reward_models.hpp"

namespace lsdt {

struct RatingBounds {
    double lo = -10.0;
    double hi = 10.0;

    double normalize(double r) const { return (r - lo) / (hi - lo); }
    double denormalize(double v) const { return lo + v * (hi - lo); }
};

struct Rating {
    std::size_t user = 0;
    ArmId item = 0;
    double value = 0.0;  // normalized to [0, 1]
};

/// Ratings with dense user and item indices. `users[u]` and `items[i]` keep
/// the original labels.
struct RatingsTable {
    std::vector<std::string> users;
    std::vector<std::string> items;
    std::vector<Rating> ratings;
    RatingBounds bounds;

    std::size_t item_count() const noexcept { return items.size(); }

    /// Mean normalized rating per item (0 for an unrated item).
    std::vector<double> item_means() const {
        std::vector<double> sum(items.size(), 0.0), n(items.size(), 0.0);
        for (const auto& r : ratings) {
            sum[r.item] += r.value;
            n[r.item] += 1.0;
        }
        for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = n[i] > 0 ? sum[i] / n[i] : 0.0;
        return sum;
    }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

inline std::optional<long long> parse_integer(std::string_view s) {
    long long v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
    return v;
}

// Items sort numerically when every label is an integer, lexicographically otherwise.
inline std::vector<std::string> ordered_labels(const std::set<std::string>& labels) {
    std::vector<std::string> out(labels.begin(), labels.end());
    const bool numeric = std::all_of(out.begin(), out.end(), [](const std::string& s) { return parse_integer(s).has_value(); });
    if (numeric)
        std::sort(out.begin(), out.end(),
                  [](const std::string& a, const std::string& b) { return *parse_integer(a) < *parse_integer(b); });
    return out;
}

}  // namespace detail

/**
 * Reads `user_id,item_id,rating` CSV (header required). Ratings must lie
 * inside the bounds and are mapped affinely onto [0, 1]. Each (user, item)
 * pair may appear once. Item indices follow label order; user indices follow
 * first appearance.
 */
inline RatingsTable ingest_ratings(std::istream& in, RatingBounds bounds = {}) {
    if (!(bounds.lo < bounds.hi)) throw std::invalid_argument("ratings: bounds need lo < hi");
    std::string line;
    std::size_t line_no = 0;
    auto fail = [&](const std::string& what) {
        throw std::runtime_error("ratings line " + std::to_string(line_no) + ": " + what);
    };
    bool header = false;
    struct Raw {
        std::string user, item;
        double rating;
    };
    std::vector<Raw> raw;
    std::set<std::string> item_labels;
    while (std::getline(in, line)) {
        ++line_no;
        const auto view = detail::trim(line);
        if (view.empty()) continue;
        if (!header) {
            if (view != "user_id,item_id,rating") fail("expected header 'user_id,item_id,rating'");
            header = true;
            continue;
        }
        std::vector<std::string_view> fields;
        std::size_t start = 0;
        while (true) {
            const auto comma = view.find(',', start);
            fields.push_back(detail::trim(view.substr(start, comma - start)));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        if (fields.size() != 3 || fields[0].empty() || fields[1].empty()) fail("expected three fields");
        double rating = 0.0;
        auto [p, ec] = std::from_chars(fields[2].data(), fields[2].data() + fields[2].size(), rating);
        if (ec != std::errc() || p != fields[2].data() + fields[2].size()) fail("rating is not a number");
        if (!(rating >= bounds.lo && rating <= bounds.hi)) fail("rating outside the declared bounds");
        raw.push_back({std::string(fields[0]), std::string(fields[1]), rating});
        item_labels.insert(std::string(fields[1]));
    }
    if (!header) throw std::runtime_error("ratings: empty file");
    if (raw.empty()) throw std::runtime_error("ratings: no rating rows");

    RatingsTable table;
    table.bounds = bounds;
    table.items = detail::ordered_labels(item_labels);
    std::map<std::string, ArmId> item_index;
    for (ArmId i = 0; i < table.items.size(); ++i) item_index[table.items[i]] = i;
    std::map<std::string, std::size_t> user_index;
    std::set<std::pair<std::size_t, ArmId>> seen;
    for (std::size_t k = 0; k < raw.size(); ++k) {
        auto [it, inserted] = user_index.emplace(raw[k].user, table.users.size());
        if (inserted) table.users.push_back(raw[k].user);
        const ArmId item = item_index.at(raw[k].item);
        if (!seen.emplace(it->second, item).second)
            throw std::runtime_error("ratings: duplicate rating for user '" + raw[k].user + "' and item '" +
                                     raw[k].item + "'");
        table.ratings.push_back({it->second, item, bounds.normalize(raw[k].rating)});
    }
    return table;
}

inline RatingsTable ingest_ratings_file(const std::string& path, RatingBounds bounds = {}) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open ratings file '" + path + "'");
    return ingest_ratings(in, bounds);
}

struct RatingsSplit {
    RatingsTable train;
    RatingsTable test;
    std::optional<std::string> warning;
};

namespace detail {

inline std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace detail

/// User-level split: a user goes to train when a uniform draw seeded by
/// (seed, hash of the user label) falls below `train_fraction`. Both sides
/// keep the full item list.
inline RatingsSplit split_ratings(const RatingsTable& table, double train_fraction, std::uint64_t seed) {
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        throw std::invalid_argument("split: train fraction must lie in (0, 1)");
    RatingsSplit out;
    for (RatingsTable* side : {&out.train, &out.test}) {
        side->items = table.items;
        side->bounds = table.bounds;
    }
    std::vector<std::size_t> new_index(table.users.size());
    std::vector<bool> to_train(table.users.size());
    for (std::size_t u = 0; u < table.users.size(); ++u) {
        RandomStream rng(derive_seed(seed, detail::fnv1a(table.users[u])));
        to_train[u] = rng.uniform01() < train_fraction;
        auto& side = to_train[u] ? out.train : out.test;
        new_index[u] = side.users.size();
        side.users.push_back(table.users[u]);
    }
    for (const auto& r : table.ratings)
        (to_train[r.user] ? out.train : out.test).ratings.push_back({new_index[r.user], r.item, r.value});
    if (out.train.users.empty() || out.test.users.empty())
        out.warning = "split left the " + std::string(out.train.users.empty() ? "training" : "test") +
                      " side without users";
    return out;
}

}  // namespace lsdt
