#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace eqcurv::linalg {

/// Dense row-major binary64 matrix.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    static DenseMatrix identity(std::size_t n) {
        DenseMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    double max_abs() const {
        double best = 0.0;
        for (double x : data_) best = std::max(best, std::abs(x));
        return best;
    }

    double frobenius() const {
        double s = 0.0;
        for (double x : data_) s += x * x;
        return std::sqrt(s);
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

inline std::vector<double> multiply(const DenseMatrix& m, const std::vector<double>& x) {
    if (x.size() != m.cols()) throw std::invalid_argument("multiply: dimension mismatch");
    std::vector<double> y(m.rows(), 0.0);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) y[i] += m(i, j) * x[j];
    return y;
}

class EigenError : public std::runtime_error {
public:
    EigenError(const std::string& what, double residual) : std::runtime_error(what), residual_(residual) {}
    /// Largest off-diagonal magnitude reached before giving up (0 for input errors).
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

struct EigenDecomposition {
    std::vector<double> values;  // descending
    DenseMatrix vectors;         // column k pairs with values[k]
    double residual = 0.0;       // off-diagonal max at termination
    int sweeps = 0;

    std::vector<double> vector(std::size_t k) const {
        std::vector<double> v(vectors.rows());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = vectors(i, k);
        return v;
    }
};

inline constexpr double kSymmetryTolerance = 1e-12;
inline constexpr double kJacobiRelativeTolerance = 1e-12;
inline constexpr int kJacobiMaxSweeps = 100;

/// Cyclic Jacobi eigensolver for symmetric matrices.
///
/// Sweeps over all (p, q) pairs in row order until the largest off-diagonal entry
/// drops to 1e-12 times the Frobenius norm of the input. Throws EigenError if the
/// input is not symmetric within 1e-12 or if 100 sweeps do not suffice.
inline EigenDecomposition symmetric_eigen(const DenseMatrix& m) {
    if (m.rows() != m.cols()) throw EigenError("symmetric_eigen: matrix is not square", 0.0);
    const std::size_t n = m.rows();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(m(i, j) - m(j, i)) > kSymmetryTolerance)
                throw EigenError("symmetric_eigen: matrix is not symmetric", 0.0);

    DenseMatrix a = m;
    DenseMatrix v = DenseMatrix::identity(n);
    const double threshold = kJacobiRelativeTolerance * m.frobenius();

    auto off_max = [&] {
        double best = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) best = std::max(best, std::abs(a(i, j)));
        return best;
    };

    int sweep = 0;
    double off = off_max();
    while (off > threshold) {
        if (sweep == kJacobiMaxSweeps) {
            throw EigenError("symmetric_eigen: no convergence after " + std::to_string(kJacobiMaxSweeps) +
                                 " sweeps (off-diagonal " + std::to_string(off) + ")",
                             off);
        }
        ++sweep;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                double t;
                if (std::abs(theta) > 1e150) {
                    t = 0.5 / theta;
                } else {
                    t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                    if (theta < 0.0) t = -t;
                }
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p);
                    const double vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
        off = off_max();
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto i, auto j) { return a(i, i) > a(j, j); });

    EigenDecomposition out;
    out.values.resize(n);
    out.vectors = DenseMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]);
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
    }
    out.residual = off;
    out.sweeps = sweep;
    return out;
}

/// Relative cutoff factor for the pseudo-inverse: eigenvalues with
/// |lambda| <= n * 1e-10 * max|lambda| are treated as zero.
inline constexpr double kPseudoInverseCutoff = 1e-10;

/// Moore-Penrose pseudo-inverse of a symmetric matrix applied to `rhs`
/// (the minimum-norm least-squares solution).
inline std::vector<double> pseudo_apply(const DenseMatrix& m, const std::vector<double>& rhs) {
    if (rhs.size() != m.rows()) throw std::invalid_argument("pseudo_apply: rhs dimension mismatch");
    const auto eig = symmetric_eigen(m);
    const std::size_t n = m.rows();
    double largest = 0.0;
    for (double l : eig.values) largest = std::max(largest, std::abs(l));
    const double tau = static_cast<double>(n) * kPseudoInverseCutoff * largest;

    std::vector<double> w(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        const double lambda = eig.values[k];
        if (!(std::abs(lambda) > tau)) continue;
        double proj = 0.0;
        for (std::size_t i = 0; i < n; ++i) proj += eig.vectors(i, k) * rhs[i];
        const double coeff = proj / lambda;
        for (std::size_t i = 0; i < n; ++i) w[i] += coeff * eig.vectors(i, k);
    }
    return w;
}

}  // namespace eqcurv::linalg
