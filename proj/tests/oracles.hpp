#pragma once

// Independent reference computations used by the unit and acceptance suites.
// None of these call into the library code they check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

namespace oracle {

/// Minimum of c.x over {A x >= b, x >= 0} by enumerating every choice of n
/// tight constraints among the m rows and n bounds, solving the square
/// system and keeping feasible points. Empty when no vertex is feasible.
/// Assumes the optimum, if any, is attained at a vertex (true when c >= 0).
inline std::optional<double> vertex_enumeration(const std::vector<double>& c,
                                                const std::vector<std::vector<double>>& a,
                                                const std::vector<double>& b) {
    const std::size_t n = c.size(), m = a.size(), total = m + n;
    // Row r < m is a_r . x >= b_r; row m + j is x_j >= 0.
    auto row = [&](std::size_t r, std::size_t j) { return r < m ? a[r][j] : (r - m == j ? 1.0 : 0.0); };
    auto rhs = [&](std::size_t r) { return r < m ? b[r] : 0.0; };
    std::optional<double> best;
    std::vector<std::size_t> pick(n);
    for (std::size_t k = 0; k < n; ++k) pick[k] = k;
    if (n > total) return best;
    while (true) {
        // Gaussian elimination with partial pivoting on the picked rows.
        std::vector<std::vector<double>> mat(n, std::vector<double>(n + 1));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) mat[i][j] = row(pick[i], j);
            mat[i][n] = rhs(pick[i]);
        }
        bool singular = false;
        for (std::size_t col = 0; col < n && !singular; ++col) {
            std::size_t piv = col;
            for (std::size_t i = col + 1; i < n; ++i)
                if (std::abs(mat[i][col]) > std::abs(mat[piv][col])) piv = i;
            if (std::abs(mat[piv][col]) < 1e-12) {
                singular = true;
                break;
            }
            std::swap(mat[piv], mat[col]);
            for (std::size_t i = 0; i < n; ++i) {
                if (i == col) continue;
                const double f = mat[i][col] / mat[col][col];
                for (std::size_t j = col; j <= n; ++j) mat[i][j] -= f * mat[col][j];
            }
        }
        if (!singular) {
            std::vector<double> x(n);
            for (std::size_t i = 0; i < n; ++i) x[i] = mat[i][n] / mat[i][i];
            bool feasible = true;
            for (std::size_t r = 0; r < total && feasible; ++r) {
                double lhs = 0.0;
                for (std::size_t j = 0; j < n; ++j) lhs += row(r, j) * x[j];
                feasible = lhs >= rhs(r) - 1e-9;
            }
            if (feasible) {
                double obj = 0.0;
                for (std::size_t j = 0; j < n; ++j) obj += c[j] * x[j];
                if (!best || obj < *best) best = obj;
            }
        }
        std::size_t pos = n;
        while (pos > 0 && pick[pos - 1] == total - n + pos - 1) --pos;
        if (pos == 0) break;
        ++pick[pos - 1];
        for (std::size_t k = pos; k < n; ++k) pick[k] = pick[k - 1] + 1;
    }
    return best;
}

/// Adjacency matrix of |mu_i - mu_j| < eps, i != j.
inline std::vector<std::vector<bool>> threshold_adjacency(const std::vector<double>& mu, double eps) {
    const std::size_t k = mu.size();
    std::vector<std::vector<bool>> adj(k, std::vector<bool>(k, false));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) adj[i][j] = i != j && std::abs(mu[i] - mu[j]) < eps;
    return adj;
}

/// Classes of identical closed neighborhoods by pairwise row comparison,
/// each sorted, ordered by smallest member.
inline std::vector<std::vector<std::size_t>> closed_neighborhood_classes(const std::vector<std::vector<bool>>& adj) {
    const std::size_t k = adj.size();
    auto same = [&](std::size_t i, std::size_t j) {
        for (std::size_t v = 0; v < k; ++v) {
            const bool in_i = v == i || adj[i][v];
            const bool in_j = v == j || adj[j][v];
            if (in_i != in_j) return false;
        }
        return true;
    };
    std::vector<std::vector<std::size_t>> classes;
    std::vector<bool> done(k, false);
    for (std::size_t i = 0; i < k; ++i) {
        if (done[i]) continue;
        classes.push_back({});
        for (std::size_t j = i; j < k; ++j)
            if (!done[j] && same(i, j)) {
                classes.back().push_back(j);
                done[j] = true;
            }
    }
    return classes;
}

/// Left anchors by checking every permutation for the umbrella property
/// (i < j < k in the order and edge(s_i, s_k) imply edge(s_i, s_j) and
/// edge(s_j, s_k)). Only for tiny graphs.
inline std::vector<std::size_t> permutation_left_anchors(const std::vector<std::vector<bool>>& adj) {
    const std::size_t k = adj.size();
    std::vector<std::size_t> order(k);
    for (std::size_t i = 0; i < k; ++i) order[i] = i;
    std::vector<bool> anchor(k, false);
    do {
        if (anchor[order[0]]) continue;
        bool ok = true;
        for (std::size_t i = 0; i < k && ok; ++i)
            for (std::size_t kk = i + 2; kk < k && ok; ++kk)
                if (adj[order[i]][order[kk]])
                    for (std::size_t j = i + 1; j < kk && ok; ++j)
                        ok = adj[order[i]][order[j]] && adj[order[j]][order[kk]];
        if (ok) anchor[order[0]] = true;
    } while (std::next_permutation(order.begin(), order.end()));
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < k; ++i)
        if (anchor[i]) out.push_back(i);
    return out;
}

/// Two-sided Student-t 97.5% quantiles for small degrees of freedom.
inline double t975(std::size_t dof) {
    static const double table[] = {0, 12.706204736, 4.302652730, 3.182446305, 2.776445105, 2.570581836,
                                   2.446911851, 2.364624252, 2.306004135, 2.262157163, 2.228138852};
    return dof < std::size(table) ? table[dof] : 1.959963985;
}

}  // namespace oracle
