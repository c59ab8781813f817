#include <gtest/gtest.h>

#include "auricle/core/linalg.hpp"
#include "auricle/core/rng.hpp"

using namespace auricle;

TEST(JacobiEigen, DiagonalizesSymmetricMatrix) {
    Matrix a(3, 3);
    const double vals[3][3] = {{4, 1, 2}, {1, 3, 0}, {2, 0, 5}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) a(i, j) = vals[i][j];
    const auto eig = jacobi_eigen(a);
    ASSERT_EQ(eig.values.size(), 3u);
    EXPECT_GE(eig.values[0], eig.values[1]);
    EXPECT_GE(eig.values[1], eig.values[2]);
    for (std::size_t j = 0; j < 3; ++j) {
        for (std::size_t i = 0; i < 3; ++i) {
            double av = 0.0;
            for (std::size_t k = 0; k < 3; ++k) av += a(i, k) * eig.vectors(k, j);
            EXPECT_NEAR(av, eig.values[j] * eig.vectors(i, j), 1e-12);
        }
    }
    // trace preserved
    EXPECT_NEAR(eig.values[0] + eig.values[1] + eig.values[2], 12.0, 1e-12);
}

TEST(JacobiEigen, VectorsAreOrthonormal) {
    Rng rng(3);
    const std::size_t n = 8;
    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) a(i, j) = a(j, i) = rng.normal();
    const auto eig = jacobi_eigen(a);
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q) {
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k) s += eig.vectors(k, p) * eig.vectors(k, q);
            EXPECT_NEAR(s, p == q ? 1.0 : 0.0, 1e-12);
        }
}

TEST(LeastSquares, RecoversExactSolution) {
    Matrix a(6, 3);
    std::vector<double> b(6);
    const double x[3] = {1.5, -2.0, 0.25};
    Rng rng(1);
    for (std::size_t i = 0; i < 6; ++i) {
        for (std::size_t j = 0; j < 3; ++j) a(i, j) = rng.normal();
        b[i] = a(i, 0) * x[0] + a(i, 1) * x[1] + a(i, 2) * x[2];
    }
    const auto sol = least_squares(a, b);
    ASSERT_TRUE(sol);
    for (int j = 0; j < 3; ++j) EXPECT_NEAR((*sol)[j], x[j], 1e-12);
}

TEST(LeastSquares, RankDeficientReturnsNullopt) {
    Matrix a(4, 2);
    for (std::size_t i = 0; i < 4; ++i) {
        a(i, 0) = static_cast<double>(i);
        a(i, 1) = 2.0 * static_cast<double>(i);
    }
    EXPECT_FALSE(least_squares(a, std::vector<double>(4, 1.0)));
}

TEST(Rng, SameSeedSameStream) {
    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) EXPECT_EQ(a.normal(), b.normal());
    EXPECT_NE(derive_seed(1, "x", 0), derive_seed(1, "x", 1));
    EXPECT_NE(derive_seed(1, "x", 0), derive_seed(1, "y", 0));
}

TEST(Rng, NormalMomentsAreStandard) {
    Rng rng(9);
    double s = 0.0, s2 = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double z = rng.normal();
        s += z;
        s2 += z * z;
    }
    EXPECT_NEAR(s / n, 0.0, 0.01);
    EXPECT_NEAR(s2 / n, 1.0, 0.01);
}
