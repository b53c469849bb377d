#include "surfstokes/reference.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace surfstokes;

namespace {

double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

} // namespace

TEST(LagrangeBasis, KroneckerAtNodes)
{
    for (int m = 1; m <= 5; ++m) {
        const LagrangeBasis b(m);
        ASSERT_EQ(b.size(), (m + 1) * (m + 2) / 2);
        for (int j = 0; j < b.size(); ++j) {
            VecX v;
            b.values(b.nodes()[static_cast<std::size_t>(j)], v);
            for (int i = 0; i < b.size(); ++i) {
                EXPECT_NEAR(v[i], i == j ? 1.0 : 0.0, 1e-12) << "order " << m;
            }
        }
    }
}

TEST(LagrangeBasis, PartitionOfUnityAndZeroGradientSum)
{
    const Vec2 pts[] = {{0.1, 0.2}, {0.33, 0.33}, {0.7, 0.05}, {0.0, 0.9}};
    for (int m = 1; m <= 5; ++m) {
        const LagrangeBasis b(m);
        for (const Vec2& xi : pts) {
            VecX v;
            Eigen::MatrixX2d g;
            Eigen::MatrixX3d h;
            b.evaluate(xi, v, g, &h);
            EXPECT_NEAR(v.sum(), 1.0, 1e-12);
            EXPECT_NEAR(g.colwise().sum().norm(), 0.0, 1e-10);
            EXPECT_NEAR(h.colwise().sum().norm(), 0.0, 1e-8);
        }
    }
}

TEST(LagrangeBasis, ReproducesPolynomialsOfItsOrder)
{
    // Interpolate p(x, y) = (1 + 2x - y)^m and compare value and gradient off the nodes.
    for (int m = 1; m <= 4; ++m) {
        const LagrangeBasis b(m);
        auto p = [m](const Vec2& x) { return std::pow(1.0 + 2.0 * x[0] - x[1], m); };
        VecX c(b.size());
        for (int i = 0; i < b.size(); ++i) {
            c[i] = p(b.nodes()[static_cast<std::size_t>(i)]);
        }
        const Vec2 xi(0.21, 0.37);
        VecX v;
        Eigen::MatrixX2d g;
        b.evaluate(xi, v, g);
        const double base = 1.0 + 2.0 * xi[0] - xi[1];
        EXPECT_NEAR(c.dot(v), p(xi), 1e-12);
        EXPECT_NEAR(c.dot(g.col(0)), 2.0 * m * std::pow(base, m - 1), 1e-11);
        EXPECT_NEAR(c.dot(g.col(1)), -1.0 * m * std::pow(base, m - 1), 1e-11);
    }
}

TEST(LagrangeBasis, NodeOrderVerticesThenEdges)
{
    const LagrangeBasis b(3);
    EXPECT_EQ(b.nodes()[0], Vec2(0, 0));
    EXPECT_EQ(b.nodes()[1], Vec2(1, 0));
    EXPECT_EQ(b.nodes()[2], Vec2(0, 1));
    // Edge 0 runs from vertex 0 to vertex 1.
    EXPECT_NEAR((b.nodes()[3] - Vec2(1.0 / 3, 0)).norm(), 0.0, 1e-15);
    EXPECT_NEAR((b.nodes()[4] - Vec2(2.0 / 3, 0)).norm(), 0.0, 1e-15);
    EXPECT_NEAR((b.nodes()[9] - Vec2(1.0 / 3, 1.0 / 3)).norm(), 0.0, 1e-15);
}

TEST(Quadrature, ExactForMonomialsUpToDegree)
{
    for (int deg = 0; deg <= 14; ++deg) {
        const QuadratureRule r = triangle_quadrature(deg);
        EXPECT_GE(r.degree, deg);
        double wsum = 0.0;
        for (std::size_t q = 0; q < r.size(); ++q) {
            wsum += r.weights[q];
            EXPECT_GT(r.weights[q], 0.0);
            EXPECT_GE(r.points[q][0], 0.0);
            EXPECT_GE(r.points[q][1], 0.0);
            EXPECT_LE(r.points[q][0] + r.points[q][1], 1.0 + 1e-15);
        }
        EXPECT_NEAR(wsum, 0.5, 1e-14);
        for (int a = 0; a <= deg; ++a) {
            for (int b = 0; a + b <= deg; ++b) {
                double s = 0.0;
                for (std::size_t q = 0; q < r.size(); ++q) {
                    s += r.weights[q] * std::pow(r.points[q][0], a) * std::pow(r.points[q][1], b);
                }
                const double exact = factorial(a) * factorial(b) / factorial(a + b + 2);
                EXPECT_NEAR(s, exact, 1e-14) << "degree " << deg << " x^" << a << " y^" << b;
            }
        }
    }
}

TEST(Quadrature, GaussJacobiIntegratesWeightedMonomials)
{
    for (int alpha : {0, 1}) {
        for (int n = 1; n <= 8; ++n) {
            std::vector<double> x;
            std::vector<double> w;
            gauss_jacobi_unit(n, alpha, x, w);
            ASSERT_EQ(static_cast<int>(x.size()), n);
            for (int p = 0; p < 2 * n; ++p) {
                double s = 0.0;
                for (int i = 0; i < n; ++i) {
                    s += w[static_cast<std::size_t>(i)] * std::pow(x[static_cast<std::size_t>(i)], p);
                }
                // int_0^1 t^p (1-t)^alpha dt
                const double exact = alpha == 0 ? 1.0 / (p + 1) : 1.0 / ((p + 1.0) * (p + 2.0));
                EXPECT_NEAR(s, exact, 1e-14) << "alpha " << alpha << " n " << n << " p " << p;
            }
        }
    }
}
