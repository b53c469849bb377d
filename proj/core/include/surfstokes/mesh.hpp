#pragma once

// Piecewise-flat triangulations of closed surfaces.

#include "surfstokes/levelset.hpp"
#include "surfstokes/types.hpp"

#include <array>
#include <string>
#include <vector>

namespace surfstokes {

using Triangle = std::array<int, 3>;
using Edge = std::array<int, 2>; ///< always (min, max)

/// Vertices, counter-clockwise triangles and the derived edge table.
/// Construction does not validate; see validate_closed().
class LinearSurfaceMesh {
public:
    LinearSurfaceMesh() = default;
    LinearSurfaceMesh(std::vector<Vec3> vertices, std::vector<Triangle> triangles, int level = 0);

    [[nodiscard]] const std::vector<Vec3>& vertices() const noexcept { return vertices_; }
    [[nodiscard]] const std::vector<Triangle>& triangles() const noexcept { return triangles_; }
    [[nodiscard]] const std::vector<Edge>& edges() const noexcept { return edges_; }
    /// Edge index of local edge e of triangle t; local edge e joins corners e and (e+1)%3.
    [[nodiscard]] int triangle_edge(std::size_t t, int e) const { return tri_edges_[t][static_cast<std::size_t>(e)]; }
    /// Number of triangles incident to each edge.
    [[nodiscard]] const std::vector<int>& edge_valence() const noexcept { return edge_valence_; }
    [[nodiscard]] int level() const noexcept { return level_; }

    [[nodiscard]] std::size_t num_vertices() const noexcept { return vertices_.size(); }
    [[nodiscard]] std::size_t num_triangles() const noexcept { return triangles_.size(); }
    [[nodiscard]] std::size_t num_edges() const noexcept { return edges_.size(); }
    [[nodiscard]] long euler_characteristic() const noexcept
    {
        return static_cast<long>(num_vertices()) - static_cast<long>(num_edges()) +
               static_cast<long>(num_triangles());
    }

    [[nodiscard]] Vec3 corner(std::size_t t, int i) const
    {
        return vertices_[static_cast<std::size_t>(triangles_[t][static_cast<std::size_t>(i)])];
    }
    /// Unnormalised normal (v1 - v0) x (v2 - v0).
    [[nodiscard]] Vec3 area_normal(std::size_t t) const;

private:
    std::vector<Vec3> vertices_;
    std::vector<Triangle> triangles_;
    std::vector<Edge> edges_;
    std::vector<std::array<int, 3>> tri_edges_;
    std::vector<int> edge_valence_;
    int level_ = 0;
};

struct MeshStats {
    double h_max = 0.0; ///< longest edge over all triangles
    double h_avg = 0.0; ///< mean of the per-triangle longest edge
    double min_angle = 0.0; ///< degrees
    std::size_t F = 0;
    std::size_t E = 0;
    std::size_t V = 0;
};

[[nodiscard]] MeshStats stats(const LinearSurfaceMesh& mesh);

/// Throws ManifoldError unless every edge has exactly two incident triangles with
/// opposite orientation and V - E + F = 2. Throws DegenerateMesh for area < 1e-14.
void validate_closed(const LinearSurfaceMesh& mesh);

/// Throws ManifoldError unless every triangle normal points along grad(phi) at its centroid.
void validate_orientation(const LinearSurfaceMesh& mesh, const LevelSetField& field);

/// Icosahedron on the unit sphere with `level` rounds of midpoint quartering.
[[nodiscard]] LinearSurfaceMesh icosphere(int level);

/// Every vertex moved along its ray from the origin onto the surface.
[[nodiscard]] LinearSurfaceMesh map_radially(const LinearSurfaceMesh& mesh, const LevelSetField& field);

/// Every vertex replaced by its closest point on the surface.
[[nodiscard]] LinearSurfaceMesh project_to_levelset(const LinearSurfaceMesh& mesh,
                                                    const LevelSetField& field);

/// Each triangle split into four through its edge midpoints; midpoints projected.
[[nodiscard]] LinearSurfaceMesh refine_red(const LinearSurfaceMesh& mesh, const LevelSetField& field);

/// `sweeps` passes of vertex -> closest point of the neighbour average.
[[nodiscard]] LinearSurfaceMesh smooth_tangential(const LinearSurfaceMesh& mesh,
                                                  const LevelSetField& field, int sweeps = 5);

/// Default icosphere level of the coarsest mesh in a hierarchy.
inline constexpr int kDefaultBaseLevel = 2;

/// Initial triangulation of a star-shaped surface: icosphere(base_level), mapped
/// radially and projected. With `smooth`, tangential smoothing runs when the
/// minimum angle drops below 10 degrees. Smoothing is off by default: on the
/// biconcave shapes it pulls vertices away from the high-curvature dimples.
[[nodiscard]] LinearSurfaceMesh initial_mesh(const LevelSetField& field, int base_level, bool smooth = false);

/// initial_mesh followed by `refinements` red refinements.
[[nodiscard]] LinearSurfaceMesh mesh_hierarchy_level(const LevelSetField& field, int base_level,
                                                     int refinements, bool smooth = false);

void export_off(const LinearSurfaceMesh& mesh, const std::string& path);
[[nodiscard]] std::string to_off(const LinearSurfaceMesh& mesh);
[[nodiscard]] LinearSurfaceMesh import_off(const std::string& path);
[[nodiscard]] LinearSurfaceMesh parse_off(const std::string& text);

} // namespace surfstokes
