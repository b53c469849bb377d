#include "support.hpp"

#include "surfstokes/extended_ops.hpp"
#include "surfstokes/taylor_jet.hpp"

#include <gtest/gtest.h>

using namespace surfstokes;
using surfstokes::testing::central_diff;

namespace {

// A rational/irrational mix exercising products, quotients and real powers.
template <class T>
T sample(const std::array<T, 3>& x)
{
    return sqrt(1.0 + x[0] * x[0] * x[1] + x[2] * x[2] * x[2] * x[2]) / (2.0 + x[0]) + pow(x[1] * x[1] + 1.5, -1.5);
}

double sample_d(const Vec3& x)
{
    return std::sqrt(1.0 + x[0] * x[0] * x[1] + std::pow(x[2], 4)) / (2.0 + x[0]) +
           std::pow(x[1] * x[1] + 1.5, -1.5);
}

} // namespace

TEST(TaylorJet, ValueAndFirstDerivativesMatchDifferences)
{
    const Vec3 x0(0.3, -0.4, 0.7);
    const auto j = sample(seed<4>(x0));
    EXPECT_NEAR(j.value(), sample_d(x0), 1e-14);
    for (int a = 0; a < 3; ++a) {
        const int e[3] = {a == 0, a == 1, a == 2};
        EXPECT_NEAR(j.derivative(e[0], e[1], e[2]), central_diff(sample_d, x0, a, 1e-3), 1e-9);
    }
}

TEST(TaylorJet, MixedSecondAndThirdDerivativesMatchNestedDifferences)
{
    const Vec3 x0(0.3, -0.4, 0.7);
    const auto j = sample(seed<4>(x0));
    const double h = 1e-2;
    for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) {
            auto da = [&](const Vec3& y) { return central_diff(sample_d, y, a, h); };
            int e[3] = {0, 0, 0};
            ++e[a];
            ++e[b];
            EXPECT_NEAR(j.derivative(e[0], e[1], e[2]), central_diff(da, x0, b, h), 1e-6) << a << b;
            for (int c = 0; c < 3; ++c) {
                auto dab = [&](const Vec3& y) { return central_diff(da, y, b, h); };
                int f[3] = {e[0], e[1], e[2]};
                ++f[c];
                EXPECT_NEAR(j.derivative(f[0], f[1], f[2]), central_diff(dab, x0, c, h), 1e-4) << a << b << c;
            }
        }
    }
}

TEST(TaylorJet, PolynomialIsReproducedExactly)
{
    // x^2 y z^3 at (1,2,3): d^6 / dx^2 dy dz^3 = 2 * 1 * 6 = 12, outside N = 4;
    // d^4/dx^2 dz^2 = 2 * y * 6 z = 72.
    const auto v = seed<4>(Vec3(1.0, 2.0, 3.0));
    const auto p = v[0] * v[0] * v[1] * v[2] * v[2] * v[2];
    EXPECT_DOUBLE_EQ(p.value(), 54.0);
    EXPECT_DOUBLE_EQ(p.derivative(2, 0, 2), 72.0);
    EXPECT_DOUBLE_EQ(p.derivative(1, 1, 1), 54.0);
}

TEST(TaylorJet, DiffLowersOrderConsistently)
{
    const Vec3 x0(0.1, 0.2, -0.3);
    const auto j = sample(seed<3>(x0));
    const auto dj = diff(j, 1);
    EXPECT_NEAR(dj.value(), j.derivative(0, 1, 0), 1e-13);
    EXPECT_NEAR(dj.derivative(1, 0, 1), j.derivative(1, 1, 1), 1e-11);
    const auto t = truncate<1>(j);
    EXPECT_DOUBLE_EQ(t.derivative(0, 0, 1), j.derivative(0, 0, 1));
}

TEST(SurfaceJets, NormalAndProjectorOnSphere)
{
    const LevelSetField s = LevelSetField::sphere(2.0);
    const Vec3 x = Vec3(1.0, -1.0, 1.0).normalized() * 2.0;
    const SurfaceJets<2> sj(s, x);
    const Vec3 n = jet::value(sj.normal<1>());
    EXPECT_NEAR((n - x / 2.0).norm(), 0.0, 1e-14);
    const Mat3 p = jet::value(sj.projector<1>());
    EXPECT_NEAR((p - (Mat3::Identity() - n * n.transpose())).norm(), 0.0, 1e-14);
    // grad n = P / r on a sphere of radius r
    const Mat3 w = jet::value(jet::grad(sj.normal<1>()));
    EXPECT_NEAR((w - p / 2.0).norm(), 0.0, 1e-13);
}

TEST(SurfaceJets, SurfaceOperatorsOnSphereAgreeWithClosedForms)
{
    // f = z on the unit sphere: grad_s f = e_z - z n, div_s(grad_s f) = -2 z.
    const LevelSetField s = LevelSetField::sphere(1.0);
    const Vec3 x = Vec3(0.3, 0.5, 0.8).normalized();
    auto f = [](const auto& y) { return y[2]; };
    const Vec3 g = surface_gradient_scalar(s, f, x);
    EXPECT_NEAR((g - (Vec3::UnitZ() - x[2] * x)).norm(), 0.0, 1e-14);
    const SurfaceJets<3> sj(s, x);
    const double lap = sj.divergence(sj.surface_gradient(f(sj.position<3>()))).value();
    EXPECT_NEAR(lap, -2.0 * x[2], 1e-13);
    // A surface curl is tangential and divergence free.
    const Vec3 c = surface_curl_scalar(s, f, x);
    EXPECT_NEAR(c.dot(x), 0.0, 1e-14);
    const double div_curl = sj.divergence(sj.curl(f(sj.position<3>()))).value();
    EXPECT_NEAR(div_curl, 0.0, 1e-13);
}

TEST(SurfaceJets, DegenerateGradientThrows)
{
    EXPECT_THROW(SurfaceJets<2>(LevelSetField::sphere(1.0), Vec3::Zero()), DegenerateGradient);
}
