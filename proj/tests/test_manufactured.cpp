#include "oracles.hpp"

#include "surfstokes/manufactured.hpp"

#include <gtest/gtest.h>

using namespace surfstokes;
namespace st = surfstokes::testing;
using st::ForcingOracle;

namespace {

void check_case(const LevelSetField& field, const ForcingOracle& oracle, double tol)
{
    const ManufacturedCase mc(field);
    double worst = 0.0;
    for (const Vec3& x : st::surface_points(field, 100)) {
        // h^4 truncation dominates above this step near the d = 0.96 dimples;
        // rounding takes over below about 1e-4.
        const Vec3 expected = oracle.forcing(x, 2.5e-4);
        const Vec3 got = mc.forcing_f(x);
        worst = std::max(worst, (got - expected).norm() / expected.norm());
        EXPECT_LE((got - expected).norm(), tol * expected.norm()) << "at " << x.transpose();
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", worst);
    ::testing::Test::RecordProperty("worst_relative_error", buf);
}

} // namespace

TEST(Manufactured, ForcingMatchesDifferenceOracleOnBiconcave)
{
    const double d = 0.96;
    check_case(LevelSetField::biconcave(0.95, d),
               ForcingOracle{[d](const Vec3& x) { return st::biconcave_gradient(d, x); }}, 1e-6);
}

TEST(Manufactured, ForcingMatchesDifferenceOracleOnFlatterBiconcave)
{
    const double d = 0.8;
    check_case(LevelSetField::biconcave(0.95, d),
               ForcingOracle{[d](const Vec3& x) { return st::biconcave_gradient(d, x); }}, 1e-6);
}

TEST(Manufactured, ForcingMatchesDifferenceOracleOnSphere)
{
    check_case(LevelSetField::sphere(), ForcingOracle{st::sphere_gradient}, 1e-6);
}

TEST(Manufactured, VelocityIsTangentialAndSolenoidal)
{
    const LevelSetField field = LevelSetField::biconcave(0.95, 0.96);
    const ManufacturedCase mc(field);
    const ForcingOracle o{[](const Vec3& x) { return st::biconcave_gradient(0.96, x); }};
    for (const Vec3& x : st::surface_points(field, 50)) {
        const Vec3 u = mc.exact_u(x);
        EXPECT_LT((u - o.velocity(x)).norm(), 1e-12 * std::max(1.0, u.norm()));
        EXPECT_LT(std::abs(u.dot(o.normal(x))), 1e-13 * std::max(1.0, u.norm()));
        // Gradient and surface divergence against differences of the oracle velocity.
        const Mat3 g = mc.exact_grad_u(x);
        const Mat3 fd = st::fd_jacobian([&](const Vec3& y) { return o.velocity(y); }, x, 1e-4);
        EXPECT_LT((g - fd).norm(), 1e-7 * std::max(1.0, g.norm()));
        const Mat3 p = o.projector(x);
        EXPECT_LT(std::abs((p * g).trace()), 1e-10 * std::max(1.0, g.norm()));
        EXPECT_LT((mc.exact_grad_p(x) - ForcingOracle::grad_p(x)).norm(), 1e-12 * std::max(1.0, x.norm()));
    }
}

TEST(Manufactured, ClosedFormPotentials)
{
    const ManufacturedCase mc;
    const Vec3 x(0.5, -1.0, 0.25);
    EXPECT_DOUBLE_EQ(mc.exact_psi(x), 0.25 * -1.0 - 5.0 * 0.015625);
    EXPECT_DOUBLE_EQ(mc.exact_p(x), 0.125 + 0.5 * -1.0 * 0.25);
}
