#pragma once

#include "eqcurv/rational.hpp"

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace eqcurv::linalg {

class RationalMatrix {
public:
    RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    static RationalMatrix identity(std::size_t n) {
        RationalMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Rational> data_;
};

inline RationalVector multiply(const RationalMatrix& m, const RationalVector& x) {
    if (x.size() != m.cols()) throw std::invalid_argument("multiply: dimension mismatch");
    RationalVector out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Rational acc = 0;
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (sgn(m(i, j)) != 0 && sgn(x[j]) != 0) acc += m(i, j) * x[j];
        out[i] = acc;
    }
    return out;
}

enum class SolveKind { unique, affine, inconsistent };

/// Result of an exact solve. `solution` is the unique or a particular solution;
/// `nullspace` spans ker(m) and is empty unless the kind is affine.
struct SolveOutcome {
    SolveKind kind{SolveKind::inconsistent};
    RationalVector solution;
    std::vector<RationalVector> nullspace;
};

namespace detail {

/// Integer row echelon form of [m | rhs] by fraction-free (Bareiss) elimination.
/// Each row is first scaled by the lcm of its denominators, which leaves the
/// solution set unchanged.
struct Echelon {
    std::size_t cols = 0;                 // coefficient columns; column `cols` is the rhs
    std::vector<std::vector<mpz_class>> a;
    std::vector<std::size_t> pivot_cols;  // pivot column of echelon row r
    bool consistent = true;
};

inline Echelon echelon(const RationalMatrix& m, const RationalVector& rhs) {
    const auto rows = m.rows();
    const auto cols = m.cols();
    Echelon e;
    e.cols = cols;
    e.a.assign(rows, std::vector<mpz_class>(cols + 1));
    for (std::size_t i = 0; i < rows; ++i) {
        mpz_class scale = rhs[i].get_den();
        for (std::size_t j = 0; j < cols; ++j) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), m(i, j).get_den_mpz_t());
        for (std::size_t j = 0; j < cols; ++j) e.a[i][j] = m(i, j).get_num() * (scale / m(i, j).get_den());
        e.a[i][cols] = rhs[i].get_num() * (scale / rhs[i].get_den());
    }

    auto& a = e.a;
    mpz_class previous = 1;
    mpz_class t;
    std::size_t r = 0;
    for (std::size_t col = 0; col < cols && r < rows; ++col) {
        std::size_t pivot = r;
        while (pivot < rows && sgn(a[pivot][col]) == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(a[pivot], a[r]);
        const mpz_class& p = a[r][col];
        for (std::size_t i = r + 1; i < rows; ++i) {
            const mpz_class f = a[i][col];
            for (std::size_t j = col + 1; j <= cols; ++j) {
                // a_ij <- (p*a_ij - f*a_rj) / previous, exact by Sylvester's identity
                t = p * a[i][j];
                t -= f * a[r][j];
                mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), previous.get_mpz_t());
            }
            a[i][col] = 0;
        }
        previous = p;
        e.pivot_cols.push_back(col);
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (sgn(a[i][cols]) != 0) e.consistent = false;
    return e;
}

/// Back substitution with the free variables fixed: `free_col` set to one (or none
/// when free_col == cols) and every other free variable zero. `use_rhs` selects
/// between the particular solution and a homogeneous one.
inline RationalVector back_substitute(const Echelon& e, std::size_t free_col, bool use_rhs) {
    RationalVector x(e.cols);
    if (free_col < e.cols) x[free_col] = 1;
    for (std::size_t r = e.pivot_cols.size(); r-- > 0;) {
        const auto pc = e.pivot_cols[r];
        const auto& row = e.a[r];
        Rational acc = use_rhs ? Rational(row[e.cols]) : Rational(0);
        for (std::size_t j = pc + 1; j < e.cols; ++j)
            if (sgn(row[j]) != 0 && sgn(x[j]) != 0) acc -= Rational(row[j]) * x[j];
        x[pc] = acc / Rational(row[pc]);
    }
    return x;
}

inline std::vector<RationalVector> nullspace_of(const Echelon& e) {
    std::vector<bool> is_pivot(e.cols, false);
    for (auto c : e.pivot_cols) is_pivot[c] = true;
    std::vector<RationalVector> basis;
    for (std::size_t c = 0; c < e.cols; ++c)
        if (!is_pivot[c]) basis.push_back(back_substitute(e, c, false));
    return basis;
}

}  // namespace detail

/// Exact solve of m·x = rhs with a three-way classification and no tolerances.
inline SolveOutcome solve_exact(const RationalMatrix& m, const RationalVector& rhs) {
    if (m.rows() != m.cols()) throw std::invalid_argument("solve_exact: matrix must be square");
    if (rhs.size() != m.rows()) throw std::invalid_argument("solve_exact: rhs dimension mismatch");

    const auto e = detail::echelon(m, rhs);
    SolveOutcome out;
    if (!e.consistent) {
        out.kind = SolveKind::inconsistent;
        return out;
    }
    out.solution = detail::back_substitute(e, e.cols, true);
    out.nullspace = detail::nullspace_of(e);
    out.kind = out.nullspace.empty() ? SolveKind::unique : SolveKind::affine;
    return out;
}

/// Basis of ker(m); vectors are indexed by the free columns in increasing order.
inline std::vector<RationalVector> nullspace_exact(const RationalMatrix& m) {
    return detail::nullspace_of(detail::echelon(m, RationalVector(m.rows())));
}

inline std::size_t rank_exact(const RationalMatrix& m) {
    return detail::echelon(m, RationalVector(m.rows())).pivot_cols.size();
}

}  // namespace eqcurv::linalg
