#pragma once

// Continuous Lagrange spaces on a curved surface.

#include "surfstokes/curved_surface.hpp"

#include <functional>
#include <memory>

namespace surfstokes {

/// Values and surface gradients (one row per local basis function) at a point.
struct BasisEval {
    VecX values;
    Eigen::MatrixX3d gradients;
};

/// Scalar Lagrange space of order m on a curved surface. The surface must
/// outlive the space.
class ScalarSpace {
public:
    ScalarSpace(const CurvedSurface& surface, int order);

    [[nodiscard]] const CurvedSurface& surface() const noexcept { return *surface_; }
    [[nodiscard]] int order() const noexcept { return order_; }
    [[nodiscard]] const DofMap& dofmap() const noexcept { return *map_; }
    [[nodiscard]] const LagrangeBasis& basis() const noexcept { return *basis_; }
    [[nodiscard]] int dim() const noexcept { return map_->size(); }
    [[nodiscard]] int local_size() const noexcept { return map_->local_size(); }

    /// Physical position of every global node on the curved surface.
    [[nodiscard]] const std::vector<Vec3>& node_points() const noexcept { return points_; }

    [[nodiscard]] VecX interpolate(const std::function<double(const Vec3&)>& f) const;

    /// Basis values and surface gradients G grad(theta) on triangle t at xi.
    [[nodiscard]] BasisEval eval_basis(std::size_t t, const Vec2& xi) const;
    /// Same, with the geometry already known at xi.
    [[nodiscard]] BasisEval eval_basis(const QuadPointGeometry& g, const Vec2& xi) const;

    /// Value and surface gradient of a coefficient vector.
    [[nodiscard]] std::pair<double, Vec3> evaluate(const VecX& coeffs, std::size_t t, const Vec2& xi) const;

private:
    const CurvedSurface* surface_;
    int order_;
    std::shared_ptr<const LagrangeBasis> basis_;
    std::shared_ptr<const DofMap> map_;
    std::vector<Vec3> points_;
};

/// Three scalar components with interleaved numbering: global index 3 * node + component.
class VectorSpace {
public:
    VectorSpace(const CurvedSurface& surface, int order) : scalar_(surface, order) {}

    [[nodiscard]] const ScalarSpace& scalar() const noexcept { return scalar_; }
    [[nodiscard]] const CurvedSurface& surface() const noexcept { return scalar_.surface(); }
    [[nodiscard]] int order() const noexcept { return scalar_.order(); }
    [[nodiscard]] int dim() const noexcept { return 3 * scalar_.dim(); }
    [[nodiscard]] int local_size() const noexcept { return 3 * scalar_.local_size(); }
    [[nodiscard]] static int index(int node, int component) { return 3 * node + component; }

    [[nodiscard]] VecX interpolate(const std::function<Vec3(const Vec3&)>& f) const;

    /// Value and full gradient (d u_i / d x_j restricted to surface directions).
    [[nodiscard]] std::pair<Vec3, Mat3> evaluate(const VecX& coeffs, std::size_t t, const Vec2& xi) const;

private:
    ScalarSpace scalar_;
};

} // namespace surfstokes
