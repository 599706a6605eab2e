#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace lsdt {

/// minimize c.x  subject to  A x >= b,  x >= 0.  A is row-major, one row
/// per constraint.
struct LinearProgram {
    std::vector<double> objective;
    std::vector<std::vector<double>> lhs;
    std::vector<double> rhs;

    std::size_t variables() const noexcept { return objective.size(); }
    std::size_t constraints() const noexcept { return lhs.size(); }

    void add_constraint(std::vector<double> row, double bound) {
        lhs.push_back(std::move(row));
        rhs.push_back(bound);
    }

    void validate() const {
        if (lhs.size() != rhs.size()) throw std::invalid_argument("lp: row count mismatch");
        for (double v : objective)
            if (!std::isfinite(v)) throw std::invalid_argument("lp: non-finite objective");
        for (std::size_t r = 0; r < lhs.size(); ++r) {
            if (lhs[r].size() != objective.size())
                throw std::invalid_argument("lp: row " + std::to_string(r) + " has wrong width");
            for (double v : lhs[r])
                if (!std::isfinite(v)) throw std::invalid_argument("lp: non-finite coefficient");
            if (!std::isfinite(rhs[r])) throw std::invalid_argument("lp: non-finite bound");
        }
    }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    std::vector<double> x;
    double objective = std::numeric_limits<double>::quiet_NaN();
};

inline constexpr double lp_feasibility_tolerance = 1e-9;
inline constexpr double lp_pivot_tolerance = 1e-12;

namespace detail {

// Dense simplex tableau. Column layout: [x (n) | surplus (m) | artificial (m) | rhs].
class Tableau {
public:
    Tableau(const LinearProgram& lp)
        : n_(lp.variables()), m_(lp.constraints()), cols_(n_ + 2 * m_ + 1),
          cells_((m_ + 1) * cols_, 0.0), basis_(m_), row_alive_(m_, true) {
        for (std::size_t r = 0; r < m_; ++r) {
            const double sign = lp.rhs[r] < 0.0 ? -1.0 : 1.0;
            for (std::size_t j = 0; j < n_; ++j) at(r, j) = sign * lp.lhs[r][j];
            at(r, n_ + r) = -sign;
            at(r, n_ + m_ + r) = 1.0;
            at(r, cols_ - 1) = sign * lp.rhs[r];
            basis_[r] = n_ + m_ + r;
        }
    }

    // Phase 1: minimize the sum of artificials. Returns the optimal value.
    double phase_one() {
        set_cost([&](std::size_t j) { return j >= n_ + m_ && j < n_ + 2 * m_ ? 1.0 : 0.0; });
        if (!iterate(n_ + 2 * m_)) throw std::logic_error("lp: phase one cannot be unbounded");
        return -at(m_, cols_ - 1);
    }

    // Pivot zero-level artificials out of the basis; rows where that is
    // impossible are linearly dependent and get retired.
    void expel_artificials() {
        for (std::size_t r = 0; r < m_; ++r) {
            if (!row_alive_[r] || basis_[r] < n_ + m_) continue;
            std::size_t enter = cols_;
            for (std::size_t j = 0; j < n_ + m_; ++j)
                if (std::abs(at(r, j)) > lp_pivot_tolerance) {
                    enter = j;
                    break;
                }
            if (enter == cols_)
                row_alive_[r] = false;
            else
                pivot(r, enter);
        }
    }

    // Phase 2 over original and surplus columns. False when unbounded.
    bool phase_two(const std::vector<double>& c) {
        set_cost([&](std::size_t j) { return j < n_ ? c[j] : 0.0; });
        return iterate(n_ + m_);
    }

    std::vector<double> primal() const {
        std::vector<double> x(n_, 0.0);
        for (std::size_t r = 0; r < m_; ++r)
            if (row_alive_[r] && basis_[r] < n_) x[basis_[r]] = std::max(0.0, at(r, cols_ - 1));
        return x;
    }

private:
    double& at(std::size_t r, std::size_t c) { return cells_[r * cols_ + c]; }
    double at(std::size_t r, std::size_t c) const { return cells_[r * cols_ + c]; }

    template <class CostFn>
    void set_cost(CostFn cost) {
        for (std::size_t j = 0; j < cols_; ++j) at(m_, j) = j + 1 < cols_ ? cost(j) : 0.0;
        // Price out the basic columns so the cost row holds reduced costs.
        for (std::size_t r = 0; r < m_; ++r) {
            if (!row_alive_[r]) continue;
            const double cb = at(m_, basis_[r]);
            if (cb == 0.0) continue;
            for (std::size_t j = 0; j < cols_; ++j) at(m_, j) -= cb * at(r, j);
        }
    }

    void pivot(std::size_t row, std::size_t col) {
        const double p = at(row, col);
        for (std::size_t j = 0; j < cols_; ++j) at(row, j) /= p;
        at(row, col) = 1.0;
        for (std::size_t r = 0; r <= m_; ++r) {
            if (r == row || (r < m_ && !row_alive_[r])) continue;
            const double f = at(r, col);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < cols_; ++j) at(r, j) -= f * at(row, j);
            at(r, col) = 0.0;
        }
        basis_[row] = col;
    }

    // Bland's rule: lowest-index improving column enters; among tied ratio
    // rows, the one whose basic variable has the lowest index leaves.
    bool iterate(std::size_t allowed_cols) {
        const std::size_t cap = 50000 + 100 * (cols_ + m_);
        for (std::size_t iter = 0; iter < cap; ++iter) {
            std::size_t enter = cols_;
            for (std::size_t j = 0; j < allowed_cols; ++j)
                if (at(m_, j) < -lp_pivot_tolerance) {
                    enter = j;
                    break;
                }
            if (enter == cols_) return true;
            std::size_t leave = m_;
            double best_ratio = std::numeric_limits<double>::infinity();
            for (std::size_t r = 0; r < m_; ++r) {
                if (!row_alive_[r]) continue;
                const double a = at(r, enter);
                if (a <= lp_pivot_tolerance) continue;
                const double ratio = at(r, cols_ - 1) / a;
                if (ratio < best_ratio - 1e-15 ||
                    (std::abs(ratio - best_ratio) <= 1e-15 && leave < m_ && basis_[r] < basis_[leave])) {
                    best_ratio = ratio;
                    leave = r;
                }
            }
            if (leave == m_) return false;
            pivot(leave, enter);
        }
        throw std::runtime_error("lp: iteration limit reached");
    }

    std::size_t n_, m_, cols_;
    std::vector<double> cells_;
    std::vector<std::size_t> basis_;
    std::vector<bool> row_alive_;
};

}  // namespace detail

/**
 * Two-phase primal simplex on a dense tableau with Bland's anti-cycling
 * rule. Intended for small programs (tens to a few hundred variables).
 * An Optimal result satisfies every constraint to within 1e-9.
 */
inline LpSolution solve_lp(const LinearProgram& lp) {
    lp.validate();
    LpSolution sol;
    detail::Tableau tableau(lp);
    double scale = 1.0;
    for (double b : lp.rhs) scale = std::max(scale, std::abs(b));
    if (tableau.phase_one() > lp_feasibility_tolerance * scale) {
        sol.status = LpStatus::Infeasible;
        return sol;
    }
    tableau.expel_artificials();
    if (!tableau.phase_two(lp.objective)) {
        sol.status = LpStatus::Unbounded;
        return sol;
    }
    sol.status = LpStatus::Optimal;
    sol.x = tableau.primal();
    sol.objective = 0.0;
    for (std::size_t j = 0; j < sol.x.size(); ++j) sol.objective += lp.objective[j] * sol.x[j];
    return sol;
}

/// Largest violation of A x >= b and x >= 0 (zero when feasible).
inline double max_violation(const LinearProgram& lp, const std::vector<double>& x) {
    double worst = 0.0;
    for (double v : x) worst = std::max(worst, -v);
    for (std::size_t r = 0; r < lp.constraints(); ++r) {
        double lhs = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) lhs += lp.lhs[r][j] * x[j];
        worst = std::max(worst, lp.rhs[r] - lhs);
    }
    return worst;
}

}  // namespace lsdt
