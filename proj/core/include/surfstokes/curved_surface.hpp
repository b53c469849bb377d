#pragma once

// Order-k isoparametric surface: each flat triangle is mapped by the order-k
// Lagrange interpolant of the closest-point projection.

#include "surfstokes/dofmap.hpp"
#include "surfstokes/levelset.hpp"
#include "surfstokes/mesh.hpp"
#include "surfstokes/reference.hpp"

#include <memory>

namespace surfstokes {

/// Geometry of the curved surface at one reference point.
struct QuadPointGeometry {
    Vec3 x = Vec3::Zero();
    Mat32 jacobian = Mat32::Zero();
    double measure = 0.0; ///< |J_1 x J_2|
    Vec3 normal = Vec3::Zero(); ///< geometric normal of the curved triangle
    Mat3 weingarten = Mat3::Zero(); ///< gradient of the geometric normal
    Vec3 normal_improved = Vec3::Zero(); ///< normalised interpolant of the exact node normals
    Mat3 weingarten_improved = Mat3::Zero();
    double gauss_improved = 0.0;
    Mat32 pullback = Mat32::Zero(); ///< J (J^T J)^{-1}; maps reference gradients to surface gradients

    [[nodiscard]] Mat3 projector() const { return Mat3::Identity() - normal * normal.transpose(); }
};

class CurvedSurface {
public:
    CurvedSurface(LinearSurfaceMesh mesh, LevelSetField field, int order);

    [[nodiscard]] const LinearSurfaceMesh& mesh() const noexcept { return *mesh_; }
    [[nodiscard]] const LevelSetField& field() const noexcept { return field_; }
    [[nodiscard]] int order() const noexcept { return order_; }
    [[nodiscard]] const DofMap& nodes_map() const noexcept { return *map_; }
    [[nodiscard]] const LagrangeBasis& basis() const noexcept { return *basis_; }
    /// Coefficients of the geometry map (one per global order-k node).
    [[nodiscard]] const std::vector<Vec3>& nodes() const noexcept { return nodes_; }
    /// Exact surface normal at every geometry node.
    [[nodiscard]] const std::vector<Vec3>& node_normals() const noexcept { return node_normals_; }
    [[nodiscard]] std::size_t num_triangles() const noexcept { return mesh_->num_triangles(); }

    /// Local 3 x n coefficient matrices of triangle t.
    [[nodiscard]] Eigen::Matrix3Xd local_nodes(std::size_t t) const;
    [[nodiscard]] Eigen::Matrix3Xd local_normals(std::size_t t) const;

    [[nodiscard]] Vec3 map(std::size_t t, const Vec2& xi) const;

    /// Geometry from precomputed order-k basis values, gradients and Hessians.
    [[nodiscard]] QuadPointGeometry geometry(std::size_t t, const VecX& val, const Eigen::MatrixX2d& grad,
                                             const Eigen::MatrixX3d& hess) const;

private:
    std::shared_ptr<const LinearSurfaceMesh> mesh_;
    LevelSetField field_;
    int order_;
    std::shared_ptr<const LagrangeBasis> basis_;
    std::shared_ptr<const DofMap> map_;
    std::vector<Vec3> nodes_;
    std::vector<Vec3> node_normals_;
};

[[nodiscard]] CurvedSurface build_curved(const LinearSurfaceMesh& mesh, const LevelSetField& field, int k);

/// Throws DegenerateJacobian if the measure falls below 1e-14.
[[nodiscard]] QuadPointGeometry geometry_at(const CurvedSurface& surface, std::size_t t, const Vec2& xi);

/// Longest straight edge of the underlying flat triangulation.
[[nodiscard]] double longest_edge(const CurvedSurface& surface);

} // namespace surfstokes
