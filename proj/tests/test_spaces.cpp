#include "support.hpp"

#include "surfstokes/complexity.hpp"
#include "surfstokes/fe_space.hpp"

#include <gtest/gtest.h>

using namespace surfstokes;

TEST(Spaces, DimensionsMatchClosedFormCounts)
{
    for (int l = 0; l <= 2; ++l) {
        const LinearSurfaceMesh m = icosphere(l);
        const CurvedSurface cs(m, LevelSetField::sphere(), 2);
        for (int order = 1; order <= 4; ++order) {
            const ScalarSpace s(cs, order);
            EXPECT_EQ(s.dim(), scalar_dim_closed(static_cast<long long>(m.num_triangles()), order));
            EXPECT_EQ(s.dim(), DofMap::expected_size(static_cast<long>(m.num_vertices()),
                                                     static_cast<long>(m.num_edges()),
                                                     static_cast<long>(m.num_triangles()), order));
            EXPECT_EQ(VectorSpace(cs, order).dim(), 3 * s.dim());
        }
    }
}

TEST(Spaces, SharedNodesHaveOneGlobalIndex)
{
    const LevelSetField field = LevelSetField::biconcave(0.95, 0.8);
    const CurvedSurface cs(mesh_hierarchy_level(field, 1, 0), field, 3);
    const ScalarSpace s(cs, 3);
    // Every global node maps to a single physical point from all incident triangles.
    std::vector<Vec3> seen(static_cast<std::size_t>(s.dim()), Vec3::Constant(1e300));
    for (std::size_t t = 0; t < cs.num_triangles(); ++t) {
        for (int i = 0; i < s.local_size(); ++i) {
            const int g = s.dofmap().global(t, i);
            const Vec3 x = cs.map(t, s.basis().nodes()[static_cast<std::size_t>(i)]);
            Vec3& ref = seen[static_cast<std::size_t>(g)];
            if (ref[0] == 1e300) {
                ref = x;
            }
            ASSERT_LT((ref - x).norm(), 1e-13);
            ASSERT_LT((s.node_points()[static_cast<std::size_t>(g)] - x).norm(), 1e-13);
        }
    }
}

TEST(Spaces, IsoparametricInterpolationOfCoordinatesIsExact)
{
    // The coordinate functions restricted to the discrete surface lie in the
    // order-k space; their surface gradients are the rows of P_h.
    const LevelSetField field = LevelSetField::biconcave(0.95, 0.96);
    for (int k = 1; k <= 3; ++k) {
        const CurvedSurface cs(mesh_hierarchy_level(field, 2, 0), field, k);
        const ScalarSpace s(cs, k);
        for (int a = 0; a < 3; ++a) {
            const VecX c = s.interpolate([a](const Vec3& x) { return x[a]; });
            for (std::size_t t = 0; t < cs.num_triangles(); t += 13) {
                const Vec2 xi(0.23, 0.41);
                const auto [v, g] = s.evaluate(c, t, xi);
                const QuadPointGeometry geo = geometry_at(cs, t, xi);
                EXPECT_NEAR(v, geo.x[a], 1e-13);
                EXPECT_LT((g - geo.projector().col(a)).norm(), 1e-11);
            }
        }
    }
}

TEST(Spaces, PlanarPolynomialsAreReproduced)
{
    const LinearSurfaceMesh m({Vec3(0, 0, 0), Vec3(1, 0.1, 0), Vec3(0.3, 1, 0), Vec3(1.2, 1.1, 0)},
                              {{0, 1, 2}, {1, 3, 2}});
    const CurvedSurface cs(m, LevelSetField::plane(0.0), 1);
    for (int order = 1; order <= 4; ++order) {
        const ScalarSpace s(cs, order);
        auto p = [order](const Vec3& x) { return std::pow(0.5 + x[0] - 2.0 * x[1], order); };
        const VecX c = s.interpolate(p);
        for (std::size_t t = 0; t < 2; ++t) {
            const Vec2 xi(0.17, 0.29);
            const Vec3 x = cs.map(t, xi);
            const auto [v, g] = s.evaluate(c, t, xi);
            const double base = 0.5 + x[0] - 2.0 * x[1];
            EXPECT_NEAR(v, p(x), 1e-12);
            EXPECT_LT((g - order * std::pow(base, order - 1) * Vec3(1, -2, 0)).norm(), 1e-11);
        }
    }
}

TEST(Spaces, VectorEvaluationUsesInterleavedComponents)
{
    const CurvedSurface cs(icosphere(1), LevelSetField::sphere(), 2);
    const VectorSpace u(cs, 2);
    const VecX c = u.interpolate([](const Vec3& x) { return Vec3(x[1], -x[0], 2.0); });
    for (int i = 0; i < u.scalar().dim(); ++i) {
        const Vec3& x = u.scalar().node_points()[static_cast<std::size_t>(i)];
        EXPECT_DOUBLE_EQ(c[VectorSpace::index(i, 0)], x[1]);
        EXPECT_DOUBLE_EQ(c[VectorSpace::index(i, 1)], -x[0]);
        EXPECT_DOUBLE_EQ(c[VectorSpace::index(i, 2)], 2.0);
    }
    const Vec2 xi(0.3, 0.3);
    const auto [v, g] = u.evaluate(c, 5, xi);
    const Vec3 x = cs.map(5, xi);
    EXPECT_NEAR((v - Vec3(x[1], -x[0], 2.0)).norm(), 0.0, 1e-13);
    EXPECT_NEAR(g.row(2).norm(), 0.0, 1e-12);
}
