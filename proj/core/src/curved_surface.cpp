#include "surfstokes/curved_surface.hpp"

#include "surfstokes/errors.hpp"

#include <cmath>

namespace surfstokes {

CurvedSurface::CurvedSurface(LinearSurfaceMesh mesh, LevelSetField field, int order)
    : mesh_(std::make_shared<const LinearSurfaceMesh>(std::move(mesh))), field_(field), order_(order)
{
    if (order < 1) {
        throw InvalidOrder("geometry order must be at least 1");
    }
    basis_ = std::make_shared<const LagrangeBasis>(order);
    map_ = std::make_shared<const DofMap>(*mesh_, order);
    nodes_.resize(static_cast<std::size_t>(map_->size()));
    node_normals_.resize(nodes_.size());
    for (std::size_t g = 0; g < nodes_.size(); ++g) {
        const auto [t, i] = map_->owners()[g];
        const auto tt = static_cast<std::size_t>(t);
        const Vec2& xi = basis_->nodes()[static_cast<std::size_t>(i)];
        Vec3 flat;
        if (i < 3) {
            flat = mesh_->corner(tt, i);
        } else {
            const Vec3 a = mesh_->corner(tt, 0);
            flat = a + xi[0] * (mesh_->corner(tt, 1) - a) + xi[1] * (mesh_->corner(tt, 2) - a);
        }
        nodes_[g] = std::abs(field_.value(flat)) <= 1e-14 ? flat : closest_point(field_, flat);
        node_normals_[g] = field_.gradient(nodes_[g]).normalized();
    }
}

Eigen::Matrix3Xd CurvedSurface::local_nodes(std::size_t t) const
{
    Eigen::Matrix3Xd c(3, map_->local_size());
    const int* g = map_->triangle(t);
    for (int i = 0; i < map_->local_size(); ++i) {
        c.col(i) = nodes_[static_cast<std::size_t>(g[i])];
    }
    return c;
}

Eigen::Matrix3Xd CurvedSurface::local_normals(std::size_t t) const
{
    Eigen::Matrix3Xd c(3, map_->local_size());
    const int* g = map_->triangle(t);
    for (int i = 0; i < map_->local_size(); ++i) {
        c.col(i) = node_normals_[static_cast<std::size_t>(g[i])];
    }
    return c;
}

Vec3 CurvedSurface::map(std::size_t t, const Vec2& xi) const
{
    VecX v;
    basis_->values(xi, v);
    return local_nodes(t) * v;
}

QuadPointGeometry CurvedSurface::geometry(std::size_t t, const VecX& val, const Eigen::MatrixX2d& grad,
                                          const Eigen::MatrixX3d& hess) const
{
    const Eigen::Matrix3Xd c = local_nodes(t);
    const Eigen::Matrix3Xd cn = local_normals(t);
    QuadPointGeometry q;
    q.x = c * val;
    q.jacobian = c * grad;
    const Vec3 j1 = q.jacobian.col(0);
    const Vec3 j2 = q.jacobian.col(1);
    const Vec3 nn = j1.cross(j2);
    q.measure = nn.norm();
    if (q.measure < 1e-14) {
        throw DegenerateJacobian("curved triangle " + std::to_string(t) + " has vanishing Jacobian");
    }
    q.normal = nn / q.measure;
    const Mat2 gram = q.jacobian.transpose() * q.jacobian;
    q.pullback = q.jacobian * gram.inverse();

    // d J_b / d xi_a from the basis Hessians (xx, xy, yy).
    const Vec3 d11 = c * hess.col(0);
    const Vec3 d12 = c * hess.col(1);
    const Vec3 d22 = c * hess.col(2);
    Mat32 dn;
    dn.col(0) = d11.cross(j2) + j1.cross(d12);
    dn.col(1) = d12.cross(j2) + j1.cross(d22);
    const Mat3 p = q.projector();
    q.weingarten = p * dn * q.pullback.transpose() / q.measure;

    const Vec3 nt = cn * val;
    const double nt_norm = nt.norm();
    q.normal_improved = nt / nt_norm;
    const Mat32 dnt = cn * grad;
    const Mat3 pt = Mat3::Identity() - q.normal_improved * q.normal_improved.transpose();
    q.weingarten_improved = dnt * q.pullback.transpose() * pt / nt_norm;
    const double tr = q.weingarten_improved.trace();
    q.gauss_improved = 0.5 * (tr * tr - (q.weingarten_improved * q.weingarten_improved).trace());
    return q;
}

CurvedSurface build_curved(const LinearSurfaceMesh& mesh, const LevelSetField& field, int k)
{
    return {mesh, field, k};
}

QuadPointGeometry geometry_at(const CurvedSurface& surface, std::size_t t, const Vec2& xi)
{
    VecX val;
    Eigen::MatrixX2d grad;
    Eigen::MatrixX3d hess;
    surface.basis().evaluate(xi, val, grad, &hess);
    return surface.geometry(t, val, grad, hess);
}

double longest_edge(const CurvedSurface& surface)
{
    return stats(surface.mesh()).h_max;
}

} // namespace surfstokes
