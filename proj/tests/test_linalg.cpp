#include "eqcurv/curvature.hpp"
#include "eqcurv/eigen.hpp"
#include "eqcurv/exact_solve.hpp"
#include "eqcurv/simplex.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace eqcurv;
using namespace eqcurv::linalg;
using oracle::frac;

namespace {

RationalMatrix from_rows(const std::vector<std::vector<long>>& rows) {
    RationalMatrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    return m;
}

DenseMatrix dense_from(const std::vector<std::vector<double>>& rows) {
    DenseMatrix m(rows.size(), rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
    return m;
}

RationalVector constant(std::size_t n, long value) { return RationalVector(n, Rational(value)); }

DenseMatrix random_symmetric(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = u(rng);
    return m;
}

}  // namespace

// Exact solver

TEST(ExactSolve, PathDistanceMatrix) {
    const auto out = solve_exact(from_rows({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}}), constant(3, 3));
    ASSERT_EQ(out.kind, SolveKind::unique);
    EXPECT_EQ(out.solution, (RationalVector{frac(3, 2), 0, frac(3, 2)}));
    EXPECT_TRUE(out.nullspace.empty());
}

TEST(ExactSolve, AffineAndInconsistent) {
    const auto m = from_rows({{1, 1}, {1, 1}});
    const auto affine = solve_exact(m, RationalVector{2, 2});
    ASSERT_EQ(affine.kind, SolveKind::affine);
    ASSERT_EQ(affine.nullspace.size(), 1U);
    EXPECT_EQ(multiply(m, affine.solution), (RationalVector{2, 2}));
    EXPECT_EQ(multiply(m, affine.nullspace[0]), (RationalVector{0, 0}));

    EXPECT_EQ(solve_exact(m, RationalVector{1, 2}).kind, SolveKind::inconsistent);
    EXPECT_THROW(solve_exact(RationalMatrix(2, 3), RationalVector{1, 2}), std::invalid_argument);
    EXPECT_THROW(solve_exact(m, RationalVector{1}), std::invalid_argument);
}

TEST(ExactSolve, RationalEntriesAndZeroPivots) {
    // Needs a row swap: the leading entry of row 0 is zero.
    auto m = from_rows({{0, 2, 1}, {1, 1, 0}, {3, 0, 1}});
    m(2, 2) = frac(1, 3);
    const RationalVector x{frac(1, 2), frac(-2, 7), 5};
    const auto out = solve_exact(m, multiply(m, x));
    ASSERT_EQ(out.kind, SolveKind::unique);
    EXPECT_EQ(out.solution, x);
}

TEST(ExactSolve, MultipartiteDistanceMatrixIsInconsistent) {
    const auto d = apsp(generate(FamilySpec::complete_multipartite({1, 1, 1, 4})));
    EXPECT_EQ(solve_exact(to_rational(d), constant(7, 7)).kind, SolveKind::inconsistent);
    EXPECT_EQ(rank_exact(to_rational(d)), 6U);
    EXPECT_EQ(nullspace_exact(to_rational(d)).size(), 1U);
}

TEST(ExactSolve, RandomIntegerSystemsRoundTrip) {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<long> entry(-6, 6);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + rng() % 7;
        RationalMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m(i, j) = entry(rng);
        // Occasionally force a dependent row.
        if (n > 1 && trial % 4 == 0)
            for (std::size_t j = 0; j < n; ++j) m(n - 1, j) = m(0, j) * 2 - m(1 % n, j);
        RationalVector x(n);
        for (auto& v : x) v = frac(entry(rng), 1 + static_cast<long>(rng() % 5));
        const auto b = multiply(m, x);
        const auto out = solve_exact(m, b);
        ASSERT_NE(out.kind, SolveKind::inconsistent);
        EXPECT_EQ(multiply(m, out.solution), b);
        EXPECT_EQ(out.nullspace.size(), n - rank_exact(m));
        for (const auto& z : out.nullspace) EXPECT_EQ(multiply(m, z), RationalVector(n, Rational(0)));
        if (out.kind == SolveKind::unique) {
            EXPECT_EQ(out.solution, x);
        }
    }
}

// Symmetric eigensolver

TEST(Eigen, CycleFourDistanceSpectrum) {
    const auto dec = symmetric_eigen(to_dense(apsp(generate(FamilySpec::cycle(4)))));
    const auto expected = oracle::circulant_eigenvalues({0, 1, 2, 1});
    ASSERT_EQ(dec.values.size(), 4U);
    for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(dec.values[k], expected[k], 1e-10);
    EXPECT_NEAR(dec.values[0], 4.0, 1e-10);
    EXPECT_NEAR(dec.values[1], 0.0, 1e-10);
    EXPECT_NEAR(dec.values[2], -2.0, 1e-10);
    EXPECT_NEAR(dec.values[3], -2.0, 1e-10);
}

TEST(Eigen, CycleSpectraMatchCirculantFormula) {
    for (std::size_t n = 3; n <= 12; ++n) {
        const auto d = apsp(generate(FamilySpec::cycle(n)));
        std::vector<double> row(n);
        for (std::size_t j = 0; j < n; ++j) row[j] = d(0, j);
        const auto expected = oracle::circulant_eigenvalues(row);
        const auto dec = symmetric_eigen(to_dense(d));
        for (std::size_t k = 0; k < n; ++k) EXPECT_NEAR(dec.values[k], expected[k], 1e-9) << "C_" << n;
    }
}

TEST(Eigen, ReconstructionAndOrthonormality) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 1 + rng() % 20;
        const auto m = random_symmetric(rng, n);
        const auto dec = symmetric_eigen(m);
        const auto& v = dec.vectors;
        double recon = 0.0, ortho = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                double a = 0.0, g = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    a += v(i, k) * dec.values[k] * v(j, k);
                    g += v(k, i) * v(k, j);
                }
                recon = std::max(recon, std::abs(a - m(i, j)));
                ortho = std::max(ortho, std::abs(g - (i == j ? 1.0 : 0.0)));
            }
        }
        EXPECT_LT(recon, 1e-9 * std::max(1.0, m.frobenius()));
        EXPECT_LT(ortho, 1e-10);
        EXPECT_TRUE(std::is_sorted(dec.values.rbegin(), dec.values.rend()));
    }
}

TEST(Eigen, RejectsNonSymmetricInput) {
    auto m = dense_from({{1, 2}, {2.1, 1}});
    EXPECT_THROW(symmetric_eigen(m), EigenError);
    EXPECT_THROW(symmetric_eigen(DenseMatrix(2, 3)), EigenError);
}

TEST(Eigen, DiagonalAndOneByOne) {
    const auto dec = symmetric_eigen(dense_from({{-1, 0, 0}, {0, 5, 0}, {0, 0, 2}}));
    EXPECT_EQ(dec.values, (std::vector<double>{5, 2, -1}));
    EXPECT_EQ(symmetric_eigen(dense_from({{7}})).values, std::vector<double>{7});
}

// Pseudo-inverse

TEST(PseudoInverse, AgreesWithExactSolveOnInvertibleSystems) {
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<long> entry(-9, 9);
    int checked = 0;
    while (checked < 50) {
        const std::size_t n = 2 + rng() % 8;
        RationalMatrix q(n, n);
        DenseMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                const long v = entry(rng);
                q(i, j) = q(j, i) = v;
                m(i, j) = m(j, i) = static_cast<double>(v);
            }
        RationalVector b(n);
        std::vector<double> bd(n);
        for (std::size_t i = 0; i < n; ++i) {
            const long v = entry(rng);
            b[i] = v;
            bd[i] = static_cast<double>(v);
        }
        const auto exact = solve_exact(q, b);
        if (exact.kind != SolveKind::unique) continue;
        const auto x = pseudo_apply(m, bd);
        for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(x[i], exact.solution[i].get_d(), 1e-8 * (1 + std::abs(exact.solution[i].get_d())));
        ++checked;
    }
}

TEST(PseudoInverse, LeastNormOnSingularConsistentSystem) {
    // [[1,1],[1,1]] x = (2,2): the least-norm solution is (1,1).
    const auto x = pseudo_apply(dense_from({{1, 1}, {1, 1}}), {2, 2});
    EXPECT_NEAR(x[0], 1.0, 1e-12);
    EXPECT_NEAR(x[1], 1.0, 1e-12);
    const auto zero = pseudo_apply(DenseMatrix(3, 3), {1, 2, 3});
    EXPECT_EQ(zero, std::vector<double>(3, 0.0));
}

// Simplex

TEST(Simplex, BoundedAndUnbounded) {
    // max y subject to y <= 3, -y <= 5
    const auto s = maximize_free({{1}, {-1}}, {3, 5}, {1});
    ASSERT_EQ(s.status, LpStatus::optimal);
    EXPECT_EQ(s.value, 3);
    EXPECT_EQ(s.y, RationalVector{3});

    const auto u = maximize_free({{-1}}, {1}, {1});
    ASSERT_EQ(u.status, LpStatus::unbounded);
    EXPECT_GT(u.ray[0], 0);

    // max x + y subject to x + 2y <= 4, 3x + y <= 6, -x <= 0, -y <= 0
    const auto v = maximize_free({{1, 2}, {3, 1}, {-1, 0}, {0, -1}}, {4, 6, 0, 0}, {1, 1});
    ASSERT_EQ(v.status, LpStatus::optimal);
    EXPECT_EQ(v.value, frac(14, 5));
    EXPECT_EQ(v.y, (RationalVector{frac(8, 5), frac(6, 5)}));

    EXPECT_THROW(maximize_free({{1}}, {-1}, {1}), std::invalid_argument);
}

TEST(MaxMin, TieBreakExample) {
    const RationalVector particular{2, 0, 0};
    const std::vector<RationalVector> basis{{-1, 1, 0}};
    const auto r = lp_max_min(particular, basis);
    ASSERT_EQ(r.status, LpStatus::optimal);
    const auto sweep = oracle::sweep_max_min({2, 0, 0}, {-1, 1, 0}, -3.0, 3.0, 6000);
    ASSERT_EQ(r.w.size(), 3U);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(r.w[i].get_d(), sweep[i], 1e-12);
    EXPECT_EQ(r.w, (RationalVector{1, 1, 0}));
    EXPECT_EQ(r.min_entry, 0);
}

TEST(MaxMin, NoNullspaceReturnsParticular) {
    const RationalVector p{frac(1, 2), 3};
    const auto r = lp_max_min(p, {});
    EXPECT_EQ(r.w, p);
    EXPECT_EQ(r.min_entry, frac(1, 2));
}

TEST(MaxMin, UnboundedWhenADirectionIsPositive) {
    const auto r = lp_max_min({0, 0}, {{1, 2}});
    EXPECT_EQ(r.status, LpStatus::unbounded);
    ASSERT_EQ(r.ray.size(), 1U);
    EXPECT_GT(r.ray[0], 0);
}

TEST(MaxMin, NoRandomSampleBeatsTheOptimum) {
    std::mt19937_64 rng(1234);
    std::uniform_int_distribution<long> entry(-5, 5);
    std::uniform_real_distribution<double> coef(-10.0, 10.0);
    int bounded = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 3 + rng() % 4;
        const std::size_t k = 1 + rng() % 2;
        RationalVector p(n);
        for (auto& x : p) x = entry(rng);
        std::vector<RationalVector> z(k, RationalVector(n));
        for (auto& v : z)
            for (auto& x : v) x = entry(rng);
        const auto r = lp_max_min(p, z);
        if (r.status == LpStatus::unbounded) {
            // The reported direction must raise every entry.
            for (std::size_t i = 0; i < n; ++i) {
                Rational d = 0;
                for (std::size_t j = 0; j < k; ++j) d += r.ray[j] * z[j][i];
                EXPECT_GT(d, 0);
            }
            continue;
        }
        ++bounded;
        // Reported w is consistent with its coefficients.
        for (std::size_t i = 0; i < n; ++i) {
            Rational w = p[i];
            for (std::size_t j = 0; j < k; ++j) w += r.coefficients[j] * z[j][i];
            EXPECT_EQ(w, r.w[i]);
        }
        EXPECT_EQ(r.min_entry, *std::min_element(r.w.begin(), r.w.end()));
        const double best = r.min_entry.get_d();
        for (int s = 0; s < 1000; ++s) {
            double m = std::numeric_limits<double>::infinity();
            std::vector<double> c(k);
            for (auto& x : c) x = coef(rng);
            for (std::size_t i = 0; i < n; ++i) {
                double w = p[i].get_d();
                for (std::size_t j = 0; j < k; ++j) w += c[j] * z[j][i].get_d();
                m = std::min(m, w);
            }
            ASSERT_LE(m, best + 1e-9);
        }
    }
    EXPECT_GT(bounded, 10);
}

TEST(MaxMin, LeximinMatchesSweepOnOneDimensionalFamilies) {
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<long> entry(-4, 4);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 3 + rng() % 3;
        RationalVector p(n), z(n);
        std::vector<double> pd(n), zd(n);
        bool positive = false, negative = false;
        for (std::size_t i = 0; i < n; ++i) {
            p[i] = entry(rng);
            z[i] = entry(rng);
            pd[i] = p[i].get_d();
            zd[i] = z[i].get_d();
            positive |= zd[i] > 0;
            negative |= zd[i] < 0;
        }
        if (!positive || !negative) continue;  // unbounded or constant along z
        const auto r = lp_max_min(p, {z});
        ASSERT_EQ(r.status, LpStatus::optimal);
        // Breakpoints have denominators dividing lcm(1..8), so a grid of step 1/840 hits them.
        const auto sweep = oracle::sweep_max_min(pd, zd, -20.0, 20.0, 40 * 840);
        for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(r.w[i].get_d(), sweep[i], 1e-9) << "trial " << trial;
    }
}
