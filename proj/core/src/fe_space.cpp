#include "surfstokes/fe_space.hpp"

#include "surfstokes/errors.hpp"

namespace surfstokes {

ScalarSpace::ScalarSpace(const CurvedSurface& surface, int order) : surface_(&surface), order_(order)
{
    if (order < 1) {
        throw InvalidOrder("finite element order must be at least 1");
    }
    basis_ = std::make_shared<const LagrangeBasis>(order);
    map_ = std::make_shared<const DofMap>(surface.mesh(), order);
    points_.resize(static_cast<std::size_t>(map_->size()));
    for (std::size_t g = 0; g < points_.size(); ++g) {
        const auto [t, i] = map_->owners()[g];
        points_[g] = surface.map(static_cast<std::size_t>(t), basis_->nodes()[static_cast<std::size_t>(i)]);
    }
}

VecX ScalarSpace::interpolate(const std::function<double(const Vec3&)>& f) const
{
    VecX c(dim());
    for (std::size_t g = 0; g < points_.size(); ++g) {
        c[static_cast<Eigen::Index>(g)] = f(points_[g]);
    }
    return c;
}

BasisEval ScalarSpace::eval_basis(const QuadPointGeometry& g, const Vec2& xi) const
{
    BasisEval b;
    Eigen::MatrixX2d ref;
    basis_->evaluate(xi, b.values, ref);
    b.gradients = ref * g.pullback.transpose();
    return b;
}

BasisEval ScalarSpace::eval_basis(std::size_t t, const Vec2& xi) const
{
    return eval_basis(geometry_at(*surface_, t, xi), xi);
}

std::pair<double, Vec3> ScalarSpace::evaluate(const VecX& coeffs, std::size_t t, const Vec2& xi) const
{
    const BasisEval b = eval_basis(t, xi);
    double v = 0.0;
    Vec3 grad = Vec3::Zero();
    const int* dofs = map_->triangle(t);
    for (int i = 0; i < local_size(); ++i) {
        const double c = coeffs[dofs[i]];
        v += c * b.values[i];
        grad += c * b.gradients.row(i).transpose();
    }
    return {v, grad};
}

VecX VectorSpace::interpolate(const std::function<Vec3(const Vec3&)>& f) const
{
    VecX c(dim());
    const auto& pts = scalar_.node_points();
    for (std::size_t g = 0; g < pts.size(); ++g) {
        const Vec3 v = f(pts[g]);
        for (int i = 0; i < 3; ++i) {
            c[index(static_cast<int>(g), i)] = v[i];
        }
    }
    return c;
}

std::pair<Vec3, Mat3> VectorSpace::evaluate(const VecX& coeffs, std::size_t t, const Vec2& xi) const
{
    const BasisEval b = scalar_.eval_basis(t, xi);
    Vec3 v = Vec3::Zero();
    Mat3 grad = Mat3::Zero();
    const int* dofs = scalar_.dofmap().triangle(t);
    for (int a = 0; a < scalar_.local_size(); ++a) {
        Vec3 c;
        for (int i = 0; i < 3; ++i) {
            c[i] = coeffs[index(dofs[a], i)];
        }
        v += c * b.values[a];
        grad += c * b.gradients.row(a);
    }
    return {v, grad};
}

} // namespace surfstokes
