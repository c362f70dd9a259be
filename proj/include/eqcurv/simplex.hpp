#pragma once

#include "eqcurv/rational.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace eqcurv::linalg {

enum class LpStatus { optimal, unbounded };

struct FreeLpSolution {
    LpStatus status{LpStatus::optimal};
    RationalVector y;    // optimal point (or the last vertex when unbounded)
    RationalVector ray;  // improving direction when unbounded
    Rational value;      // objective at y
};

/// Exact simplex for
///
///     maximize  objective·y   subject to  A·y <= b,  y free,
///
/// with b >= 0 so that y = 0 is feasible and the slack basis starts the search.
/// Free variables are split as y = y+ - y-. Entering and leaving variables follow
/// Bland's rule, which rules out cycling.
inline FreeLpSolution maximize_free(const std::vector<RationalVector>& a, const RationalVector& b,
                                    const RationalVector& objective) {
    const std::size_t m = a.size();
    const std::size_t k = objective.size();
    if (b.size() != m) throw std::invalid_argument("maximize_free: rhs dimension mismatch");
    for (const auto& row : a)
        if (row.size() != k) throw std::invalid_argument("maximize_free: constraint width mismatch");
    for (const auto& bi : b)
        if (sgn(bi) < 0) throw std::invalid_argument("maximize_free: origin must be feasible (b >= 0)");

    // Columns: y+ (0..k-1), y- (k..2k-1), slacks (2k..2k+m-1); last column is the rhs.
    const std::size_t width = 2 * k + m;
    std::vector<RationalVector> t(m, RationalVector(width + 1));
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            t[i][j] = a[i][j];
            t[i][k + j] = -a[i][j];
        }
        t[i][2 * k + i] = 1;
        t[i][width] = b[i];
        basis[i] = 2 * k + i;
    }
    RationalVector cost(width);
    for (std::size_t j = 0; j < k; ++j) {
        cost[j] = objective[j];
        cost[k + j] = -objective[j];
    }

    auto extract = [&](std::size_t entering_column, bool as_ray) {
        RationalVector full(width);
        if (as_ray) {
            full[entering_column] = 1;
            for (std::size_t i = 0; i < m; ++i) full[basis[i]] = -t[i][entering_column];
        } else {
            for (std::size_t i = 0; i < m; ++i) full[basis[i]] = t[i][width];
        }
        RationalVector y(k);
        for (std::size_t j = 0; j < k; ++j) y[j] = full[j] - full[k + j];
        return y;
    };
    auto objective_at = [&](const RationalVector& y) {
        Rational v = 0;
        for (std::size_t j = 0; j < k; ++j) v += objective[j] * y[j];
        return v;
    };

    std::vector<bool> in_basis(width, false);
    for (auto bi : basis) in_basis[bi] = true;

    while (true) {
        std::optional<std::size_t> entering;
        for (std::size_t q = 0; q < width && !entering; ++q) {
            if (in_basis[q]) continue;
            Rational reduced = cost[q];
            for (std::size_t i = 0; i < m; ++i)
                if (sgn(t[i][q]) != 0 && sgn(cost[basis[i]]) != 0) reduced -= cost[basis[i]] * t[i][q];
            if (sgn(reduced) > 0) entering = q;
        }
        if (!entering) {
            FreeLpSolution sol;
            sol.y = extract(0, false);
            sol.value = objective_at(sol.y);
            return sol;
        }
        const auto q = *entering;

        std::optional<std::size_t> leaving;
        Rational best_ratio;
        for (std::size_t i = 0; i < m; ++i) {
            if (sgn(t[i][q]) <= 0) continue;
            Rational ratio = t[i][width] / t[i][q];
            if (!leaving || ratio < best_ratio || (ratio == best_ratio && basis[i] < basis[*leaving])) {
                leaving = i;
                best_ratio = ratio;
            }
        }
        if (!leaving) {
            FreeLpSolution sol;
            sol.status = LpStatus::unbounded;
            sol.y = extract(0, false);
            sol.ray = extract(q, true);
            sol.value = objective_at(sol.y);
            return sol;
        }

        const auto r = *leaving;
        const Rational pivot = t[r][q];
        for (auto& x : t[r]) x /= pivot;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == r || sgn(t[i][q]) == 0) continue;
            const Rational f = t[i][q];
            for (std::size_t j = 0; j <= width; ++j)
                if (sgn(t[r][j]) != 0) t[i][j] -= f * t[r][j];
        }
        in_basis[basis[r]] = false;
        in_basis[q] = true;
        basis[r] = q;
    }
}

struct MaxMinResult {
    LpStatus status{LpStatus::optimal};
    RationalVector w;             // particular + sum_j coefficients[j] * nullspace[j]
    RationalVector coefficients;
    Rational min_entry;           // t = min_i w_i
    RationalVector ray;           // coefficient direction along which t grows without bound
};

/// Among all w = particular + sum_j c_j * nullspace[j], returns the one that maximizes
/// min_i w_i.
///
/// The maximizer of the minimum is generally not unique, so the result is refined to
/// the leximin optimum: with the smallest entries frozen at their best level, the next
/// smallest are raised as far as possible, and so on. That point is unique whenever
/// every refinement stage is bounded. An unbounded first stage is reported with the
/// particular solution and an improving coefficient direction.
inline MaxMinResult lp_max_min(const RationalVector& particular, const std::vector<RationalVector>& nullspace) {
    const std::size_t n = particular.size();
    const std::size_t k = nullspace.size();
    for (const auto& z : nullspace)
        if (z.size() != n) throw std::invalid_argument("lp_max_min: nullspace vector dimension mismatch");

    auto min_of = [](const RationalVector& v) {
        Rational best = v.empty() ? Rational(0) : v.front();
        for (const auto& x : v)
            if (x < best) best = x;
        return best;
    };

    MaxMinResult result;
    result.w = particular;
    result.coefficients.assign(k, Rational(0));
    result.min_entry = min_of(particular);
    if (k == 0 || n == 0) return result;

    auto evaluate = [&](const RationalVector& c) {
        RationalVector w = particular;
        for (std::size_t j = 0; j < k; ++j)
            if (sgn(c[j]) != 0)
                for (std::size_t i = 0; i < n; ++i) w[i] += c[j] * nullspace[j][i];
        return w;
    };

    RationalVector c(k);
    RationalVector w = particular;
    std::vector<std::optional<Rational>> floor(n);  // frozen lower bounds; nullopt = still free
    bool first_stage = true;

    while (true) {
        std::vector<std::size_t> free_idx;
        for (std::size_t i = 0; i < n; ++i)
            if (!floor[i]) free_idx.push_back(i);
        if (free_idx.empty()) break;

        Rational level = w[free_idx.front()];
        for (auto i : free_idx)
            if (w[i] < level) level = w[i];

        // Variables (delta_1..delta_k, tau) around the current point:
        //   free i:   -(B delta)_i + tau <= w_i - level
        //   frozen i: -(B delta)_i       <= w_i - floor_i
        std::vector<RationalVector> a(n, RationalVector(k + 1));
        RationalVector b(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < k; ++j) a[i][j] = -nullspace[j][i];
            if (floor[i]) {
                b[i] = w[i] - *floor[i];
            } else {
                a[i][k] = 1;
                b[i] = w[i] - level;
            }
        }
        RationalVector objective(k + 1);
        objective[k] = 1;
        const auto lp = maximize_free(a, b, objective);
        if (lp.status == LpStatus::unbounded) {
            if (first_stage) {
                result.status = LpStatus::unbounded;
                result.ray.assign(lp.ray.begin(), lp.ray.begin() + static_cast<std::ptrdiff_t>(k));
                return result;
            }
            break;
        }
        for (std::size_t j = 0; j < k; ++j) c[j] += lp.y[j];
        w = evaluate(c);
        level += lp.y[k];
        if (first_stage) result.min_entry = level;
        first_stage = false;

        // Free entries sitting at the level are frozen when no feasible move can lift them.
        std::size_t frozen_now = 0;
        for (auto i : free_idx) {
            if (w[i] != level) continue;
            std::vector<RationalVector> a2(n, RationalVector(k));
            RationalVector b2(n);
            for (std::size_t r = 0; r < n; ++r) {
                for (std::size_t j = 0; j < k; ++j) a2[r][j] = -nullspace[j][r];
                b2[r] = w[r] - (floor[r] ? *floor[r] : level);
            }
            RationalVector lift(k);
            for (std::size_t j = 0; j < k; ++j) lift[j] = nullspace[j][i];
            const auto probe = maximize_free(a2, b2, lift);
            if (probe.status == LpStatus::optimal && sgn(probe.value) == 0) {
                floor[i] = level;
                ++frozen_now;
            }
        }
        if (frozen_now == 0) break;  // unreachable for bounded problems
    }

    result.w = std::move(w);
    result.coefficients = std::move(c);
    return result;
}

}  // namespace eqcurv::linalg
