#pragma once

#include "eqcurv/eigen.hpp"
#include "eqcurv/exact_solve.hpp"
#include "eqcurv/graph.hpp"
#include "eqcurv/random.hpp"
#include "eqcurv/rational.hpp"
#include "eqcurv/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace eqcurv {

enum class CurvatureStatus {
    exact_unique,     // D w = n·1 has exactly one solution
    exact_canonical,  // several solutions; the max-min one is reported
    inconsistent,     // no solution; w is the pseudo-inverse substitute
};

inline std::string_view status_name(CurvatureStatus s) {
    switch (s) {
        case CurvatureStatus::exact_unique: return "exact_unique";
        case CurvatureStatus::exact_canonical: return "exact_canonical";
        case CurvatureStatus::inconsistent: return "inconsistent";
    }
    return "unknown";
}

inline CurvatureStatus parse_status(std::string_view s) {
    if (s == "exact_unique") return CurvatureStatus::exact_unique;
    if (s == "exact_canonical") return CurvatureStatus::exact_canonical;
    if (s == "inconsistent") return CurvatureStatus::inconsistent;
    throw std::invalid_argument("unknown curvature status '" + std::string(s) + "'");
}

/// Per-vertex curvature w with D·w = n·1 (or its least-squares substitute).
///
/// For exact statuses `w_exact`, `K_exact` and `total_exact` carry the rational
/// values and the floating fields are their conversions. For the inconsistent
/// status only the floating fields are meaningful and K is a "pseudo" bound.
struct CurvatureResult {
    CurvatureStatus status{CurvatureStatus::exact_unique};
    RationalVector w_exact;
    std::vector<double> w;
    Rational K_exact;
    Rational total_exact;
    double K = 0.0;
    double total = 0.0;
    double residual_min = 0.0;
    double residual_max = 0.0;
    std::size_t nullspace_dimension = 0;
    std::vector<RationalVector> nullspace;  // basis of ker D
    bool lp_unbounded = false;
    RationalVector unbounded_direction;     // nullspace coefficients, only when lp_unbounded

    bool is_exact() const noexcept { return status != CurvatureStatus::inconsistent; }
    bool is_constant() const {
        if (is_exact()) return std::all_of(w_exact.begin(), w_exact.end(), [&](const auto& x) { return x == w_exact[0]; });
        return std::all_of(w.begin(), w.end(), [&](double x) { return x == w[0]; });
    }
    bool negatively_curved() const { return is_exact() ? sgn(K_exact) < 0 : K < 0.0; }

    bool operator==(const CurvatureResult&) const = default;
};

inline linalg::RationalMatrix to_rational(const DistanceMatrix& d) {
    const auto n = d.order();
    linalg::RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = static_cast<unsigned long>(d(i, j));
    return m;
}

inline linalg::DenseMatrix to_dense(const DistanceMatrix& d) {
    const auto n = d.order();
    linalg::DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = d(i, j);
    return m;
}

inline RationalVector distance_times(const DistanceMatrix& d, const RationalVector& w) {
    RationalVector out(d.order());
    for (std::size_t i = 0; i < d.order(); ++i) {
        Rational acc = 0;
        const auto row = d.row(i);
        for (std::size_t j = 0; j < d.order(); ++j)
            if (row[j] != 0 && sgn(w[j]) != 0) acc += w[j] * static_cast<unsigned long>(row[j]);
        out[i] = acc;
    }
    return out;
}

inline std::vector<double> distance_times(const DistanceMatrix& d, const std::vector<double>& w) {
    std::vector<double> out(d.order(), 0.0);
    for (std::size_t i = 0; i < d.order(); ++i) {
        const auto row = d.row(i);
        for (std::size_t j = 0; j < d.order(); ++j) out[i] += row[j] * w[j];
    }
    return out;
}

namespace detail {

inline void fill_exact(CurvatureResult& r, const DistanceMatrix& d, RationalVector w) {
    r.w_exact = std::move(w);
    r.w = to_double(r.w_exact);
    r.K_exact = *std::min_element(r.w_exact.begin(), r.w_exact.end());
    r.total_exact = 0;
    for (const auto& x : r.w_exact) r.total_exact += abs(x);
    r.K = r.K_exact.get_d();
    r.total = r.total_exact.get_d();
    const auto dw = distance_times(d, r.w_exact);
    r.residual_min = std::min_element(dw.begin(), dw.end())->get_d();
    r.residual_max = std::max_element(dw.begin(), dw.end())->get_d();
}

}  // namespace detail

/// Solves D w = n·1 exactly; falls back to the pseudo-inverse when there is no solution.
inline CurvatureResult compute_curvature(const DistanceMatrix& d) {
    const auto n = d.order();
    const auto m = to_rational(d);
    const RationalVector rhs(n, Rational(static_cast<unsigned long>(n)));
    auto outcome = linalg::solve_exact(m, rhs);

    CurvatureResult r;
    switch (outcome.kind) {
        case linalg::SolveKind::unique:
            r.status = CurvatureStatus::exact_unique;
            detail::fill_exact(r, d, std::move(outcome.solution));
            break;
        case linalg::SolveKind::affine: {
            r.status = CurvatureStatus::exact_canonical;
            r.nullspace_dimension = outcome.nullspace.size();
            // Constant row sums R put 1 in range D = (ker D)^perp, so every solution has
            // the same entry sum and the constant n/R alone reaches min = mean.
            if (const auto row = constant_row_sum(d)) {
                r.nullspace = std::move(outcome.nullspace);
                detail::fill_exact(r, d, RationalVector(n, Rational(static_cast<unsigned long>(n)) / *row));
                break;
            }
            auto lp = linalg::lp_max_min(outcome.solution, outcome.nullspace);
            if (lp.status == linalg::LpStatus::unbounded) {
                r.lp_unbounded = true;
                r.unbounded_direction = std::move(lp.ray);
            }
            r.nullspace = std::move(outcome.nullspace);
            detail::fill_exact(r, d, std::move(lp.w));
            break;
        }
        case linalg::SolveKind::inconsistent: {
            r.status = CurvatureStatus::inconsistent;
            r.nullspace = linalg::nullspace_exact(m);
            r.nullspace_dimension = r.nullspace.size();
            r.w = linalg::pseudo_apply(to_dense(d), std::vector<double>(n, static_cast<double>(n)));
            r.K = *std::min_element(r.w.begin(), r.w.end());
            r.total = 0.0;
            for (double x : r.w) r.total += std::abs(x);
            const auto dw = distance_times(d, r.w);
            r.residual_min = *std::min_element(dw.begin(), dw.end());
            r.residual_max = *std::max_element(dw.begin(), dw.end());
            break;
        }
    }
    return r;
}

inline CurvatureResult compute_curvature(const Graph& g) { return compute_curvature(apsp(g)); }

/// Closed-form constant curvature of the vertex-transitive families.
inline Rational curvature_of_family(const FamilySpec& spec) {
    validate(spec);
    const auto& p = spec.params;
    auto q = [](std::size_t num, std::size_t den) {
        Rational r(static_cast<unsigned long>(num), static_cast<unsigned long>(den));
        r.canonicalize();
        return r;
    };
    switch (spec.family) {
        case Family::complete:
            if (p[0] < 2) throw SpecError("complete: closed form needs n >= 2");
            return q(p[0], p[0] - 1);
        case Family::cycle: return q(p[0], p[0] * p[0] / 4);
        case Family::hypercube: return q(2, p[0]);
        case Family::cocktail_party: return Rational(1);
        case Family::johnson: return q(p[0], p[1] * (p[0] - p[1]));
        case Family::demicube: return q(4, p[0]);
        default:
            throw SpecError("no closed-form curvature for family '" + std::string(family_name(spec.family)) + "'");
    }
}

// ---------------------------------------------------------------------------
// Solution-space diagnostics

struct InvarianceReport {
    std::size_t samples = 0;
    std::size_t nonnegative_found = 0;
    bool vacuous = true;
    bool pass = true;
    Rational reference_total;
    std::uint64_t seed = 0;
};

inline constexpr std::size_t kInvarianceSamples = 10000;
inline constexpr double kInvarianceCoefficientRange = 2.0;

/// Samples points of the affine solution space w + sum c_j z_j with c_j uniform in
/// [-2, 2] (each z_j scaled to unit max-norm) and checks that every entrywise
/// nonnegative sample has the same l1 norm as the reference nonnegative solution.
inline InvarianceReport total_curvature_invariance_check(const CurvatureResult& r,
                                                         std::size_t samples = kInvarianceSamples,
                                                         std::uint64_t seed = 0) {
    InvarianceReport rep;
    rep.seed = seed;
    if (r.status != CurvatureStatus::exact_canonical || r.nullspace.empty()) return rep;

    std::vector<RationalVector> directions;
    for (const auto& z : r.nullspace) {
        Rational scale = 0;
        for (const auto& x : z)
            if (abs(x) > scale) scale = abs(x);
        RationalVector unit = z;
        for (auto& x : unit) x /= scale;
        directions.push_back(std::move(unit));
    }

    // The reference is the first nonnegative point seen: the canonical w when it
    // qualifies, otherwise the first nonnegative sample.
    std::optional<Rational> reference;
    auto l1_if_nonnegative = [](const RationalVector& v) -> std::optional<Rational> {
        Rational s = 0;
        for (const auto& x : v) {
            if (sgn(x) < 0) return std::nullopt;
            s += x;
        }
        return s;
    };
    reference = l1_if_nonnegative(r.w_exact);

    std::mt19937_64 rng(seed);
    rep.samples = samples;
    for (std::size_t s = 0; s < samples; ++s) {
        RationalVector v = r.w_exact;
        for (const auto& z : directions) {
            const Rational c(uniform(rng, -kInvarianceCoefficientRange, kInvarianceCoefficientRange));
            for (std::size_t i = 0; i < v.size(); ++i) v[i] += c * z[i];
        }
        auto l1 = l1_if_nonnegative(v);
        if (!l1) continue;
        ++rep.nonnegative_found;
        if (!reference) reference = *l1;
        if (*l1 != *reference) rep.pass = false;
    }
    rep.vacuous = rep.nonnegative_found == 0;
    if (reference) rep.reference_total = *reference;
    return rep;
}

inline InvarianceReport total_curvature_invariance_check(const Graph& g, std::size_t samples = kInvarianceSamples,
                                                         std::uint64_t seed = 0) {
    return total_curvature_invariance_check(compute_curvature(g), samples, seed);
}

struct NullspaceSumReport {
    std::vector<Rational> sums;  // entry sum of each basis vector of ker D
    bool exceptional = false;    // some sum is nonzero
};

/// Entry sums of a basis of ker D. A nonzero sum means ker D is not orthogonal to
/// the constant vector.
inline NullspaceSumReport nullspace_sum_check(const DistanceMatrix& d) {
    NullspaceSumReport rep;
    for (const auto& z : linalg::nullspace_exact(to_rational(d))) {
        Rational s = 0;
        for (const auto& x : z) s += x;
        if (sgn(s) != 0) rep.exceptional = true;
        rep.sums.push_back(s);
    }
    return rep;
}

inline NullspaceSumReport nullspace_sum_check(const Graph& g) { return nullspace_sum_check(apsp(g)); }

}  // namespace eqcurv
