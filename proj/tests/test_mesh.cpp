#include "support.hpp"

#include "surfstokes/errors.hpp"
#include "surfstokes/mesh.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <set>

using namespace surfstokes;
namespace st = surfstokes::testing;

namespace {

// Closed 2-manifold, consistently oriented, genus 0.
void expect_sphere_topology(const LinearSurfaceMesh& m)
{
    EXPECT_NO_THROW(validate_closed(m));
    EXPECT_EQ(m.euler_characteristic(), 2);
    for (int v : m.edge_valence()) {
        ASSERT_EQ(v, 2);
    }
    EXPECT_EQ(2 * m.num_edges(), 3 * m.num_triangles());
}

} // namespace

TEST(Mesh, IcosahedronCounts)
{
    const LinearSurfaceMesh m = icosphere(0);
    EXPECT_EQ(m.num_vertices(), 12u);
    EXPECT_EQ(m.num_edges(), 30u);
    EXPECT_EQ(m.num_triangles(), 20u);
    expect_sphere_topology(m);
}

TEST(Mesh, IcosphereLevelsScaleByFour)
{
    for (int l = 0; l <= 4; ++l) {
        const LinearSurfaceMesh m = icosphere(l);
        const std::size_t f = 20u << (2 * l);
        EXPECT_EQ(m.num_triangles(), f);
        EXPECT_EQ(m.num_edges(), 3 * f / 2);
        EXPECT_EQ(m.num_vertices(), f / 2 + 2);
        expect_sphere_topology(m);
        for (const Vec3& v : m.vertices()) {
            ASSERT_NEAR(v.norm(), 1.0, 1e-14);
        }
        EXPECT_NO_THROW(validate_orientation(m, LevelSetField::sphere()));
    }
    EXPECT_EQ(icosphere(2).num_vertices(), 162u);
}

TEST(Mesh, ProjectionIsIdentityOnTheSphere)
{
    const LinearSurfaceMesh m = icosphere(3);
    const LinearSurfaceMesh p = project_to_levelset(m, LevelSetField::sphere());
    for (std::size_t i = 0; i < m.num_vertices(); ++i) {
        EXPECT_LT((m.vertices()[i] - p.vertices()[i]).norm(), 1e-12);
    }
}

TEST(Mesh, RefinementHalvesMeshSizeAndKeepsInvariants)
{
    for (const LevelSetField& field :
         {LevelSetField::sphere(), LevelSetField::biconcave(0.95, 0.0), LevelSetField::biconcave(0.95, 0.96)}) {
        LinearSurfaceMesh m = initial_mesh(field, kDefaultBaseLevel);
        expect_sphere_topology(m);
        EXPECT_NO_THROW(validate_orientation(m, field));
        for (int l = 0; l < 3; ++l) {
            const LinearSurfaceMesh r = refine_red(m, field);
            EXPECT_EQ(r.num_triangles(), 4 * m.num_triangles());
            EXPECT_EQ(r.level(), m.level() + 1);
            expect_sphere_topology(r);
            EXPECT_NO_THROW(validate_orientation(r, field));
            for (const Vec3& v : r.vertices()) {
                ASSERT_LT(std::abs(field.value(v)), 1e-10 * std::max(1.0, field.gradient(v).norm()));
            }
            const double h0 = stats(m).h_max;
            const double h1 = stats(r).h_max;
            EXPECT_LT(h1, h0);
            if (field.kind() == SurfaceKind::sphere || l > 0) {
                EXPECT_GE(h1 / h0, 0.45) << field.describe() << " level " << l;
                EXPECT_LE(h1 / h0, 0.55) << field.describe() << " level " << l;
            }
            m = r;
        }
    }
}

TEST(Mesh, SmoothingKeepsTopologyAndImprovesAngles)
{
    const LevelSetField field = LevelSetField::biconcave(0.95, 0.8);
    const LinearSurfaceMesh m = map_radially(icosphere(2), field);
    const LinearSurfaceMesh s = smooth_tangential(m, field);
    expect_sphere_topology(s);
    EXPECT_NO_THROW(validate_orientation(s, field));
    EXPECT_GT(stats(s).min_angle, 10.0);
    const LinearSurfaceMesh sm = initial_mesh(field, 2, true);
    EXPECT_GT(stats(sm).min_angle, 10.0);
}

TEST(Mesh, HierarchyLevelsAreNested)
{
    const LevelSetField field = LevelSetField::biconcave(0.95, 0.96);
    const LinearSurfaceMesh a = mesh_hierarchy_level(field, 2, 1);
    const LinearSurfaceMesh b = mesh_hierarchy_level(field, 2, 2);
    EXPECT_EQ(a.num_triangles(), 1280u);
    EXPECT_EQ(b.num_triangles(), 5120u);
    // Coarse vertices keep their indices and positions.
    for (std::size_t i = 0; i < a.num_vertices(); ++i) {
        ASSERT_LT((a.vertices()[i] - b.vertices()[i]).norm(), 1e-15);
    }
}

TEST(Mesh, OffRoundTrip)
{
    const LinearSurfaceMesh m = mesh_hierarchy_level(LevelSetField::biconcave(0.95, 0.8), 1, 1);
    const LinearSurfaceMesh r = parse_off(to_off(m));
    ASSERT_EQ(r.num_vertices(), m.num_vertices());
    ASSERT_EQ(r.triangles(), m.triangles());
    for (std::size_t i = 0; i < m.num_vertices(); ++i) {
        EXPECT_EQ(r.vertices()[i], m.vertices()[i]);
    }
    const auto path = std::filesystem::temp_directory_path() / "surfstokes_roundtrip.off";
    export_off(m, path.string());
    const LinearSurfaceMesh f = import_off(path.string());
    EXPECT_EQ(f.triangles(), m.triangles());
    std::filesystem::remove(path);
}

TEST(Mesh, OffParseErrorsCarryLineNumbers)
{
    try {
        (void)parse_off("OFF\n3 1 0\n0 0 0\n1 0 0\n0 1\n3 0 1 2\n");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 5);
    }
    try {
        (void)parse_off("PLY\n");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 1);
    }
    try {
        (void)parse_off("OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 7\n");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 6);
    }
}

TEST(Mesh, OpenMeshIsNotClosed)
{
    const LinearSurfaceMesh m({Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(1, 1, 0)}, {{0, 1, 2}, {1, 3, 2}});
    EXPECT_THROW(validate_closed(m), ManifoldError);
}

TEST(Mesh, FlippedTriangleIsRejected)
{
    LinearSurfaceMesh m = icosphere(1);
    std::vector<Triangle> t = m.triangles();
    std::swap(t[3][0], t[3][1]);
    const LinearSurfaceMesh bad(m.vertices(), t);
    EXPECT_THROW(validate_closed(bad), ManifoldError);
}

TEST(Mesh, TorusHasZeroEulerCharacteristic)
{
    const LinearSurfaceMesh t = st::torus_mesh();
    EXPECT_EQ(t.euler_characteristic(), 0);
    EXPECT_THROW(validate_closed(t), ManifoldError);
}

TEST(Mesh, EdgesAreUniqueAndSorted)
{
    const LinearSurfaceMesh m = icosphere(2);
    std::set<Edge> seen;
    for (const Edge& e : m.edges()) {
        EXPECT_LT(e[0], e[1]);
        EXPECT_TRUE(seen.insert(e).second);
    }
    for (std::size_t t = 0; t < m.num_triangles(); ++t) {
        for (int e = 0; e < 3; ++e) {
            const Edge& ed = m.edges()[static_cast<std::size_t>(m.triangle_edge(t, e))];
            const int a = m.triangles()[t][static_cast<std::size_t>(e)];
            const int b = m.triangles()[t][static_cast<std::size_t>((e + 1) % 3)];
            EXPECT_EQ(ed, (Edge{std::min(a, b), std::max(a, b)}));
        }
    }
}
