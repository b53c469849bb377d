#pragma once

// Reference-triangle machinery: Lagrange bases on equispaced nodes and
// collapsed Gauss quadrature. The reference triangle has vertices
// (0,0), (1,0), (0,1).

#include "surfstokes/types.hpp"

#include <array>
#include <vector>

namespace surfstokes {

/// Lagrange basis of order m on the equispaced lattice.
///
/// Local node order: the three vertices, then m-1 nodes on each edge
/// (edge e runs from vertex e to vertex (e+1)%3), then interior nodes row by row.
class LagrangeBasis {
public:
    explicit LagrangeBasis(int order);

    [[nodiscard]] int order() const noexcept { return order_; }
    [[nodiscard]] int size() const noexcept { return static_cast<int>(nodes_.size()); }
    [[nodiscard]] const std::vector<Vec2>& nodes() const noexcept { return nodes_; }

    /// Basis values at a reference point.
    void values(const Vec2& xi, VecX& out) const;
    /// values, gradients (size x 2) and optionally Hessians (size x 3: xx, xy, yy).
    void evaluate(const Vec2& xi, VecX& val, Eigen::MatrixX2d& grad, Eigen::MatrixX3d* hess = nullptr) const;

private:
    int order_;
    std::vector<Vec2> nodes_;
    std::vector<std::array<int, 2>> exponents_;
    Eigen::MatrixXd coeffs_; ///< column i: monomial coefficients of basis i
};

struct QuadratureRule {
    std::vector<Vec2> points;
    std::vector<double> weights;
    int degree = 0;

    [[nodiscard]] std::size_t size() const noexcept { return points.size(); }
};

/// Collapsed (Duffy) product rule exact for polynomials of total degree <= degree:
/// Gauss-Legendre along one direction and Gauss-Jacobi(1,0) along the other.
[[nodiscard]] QuadratureRule triangle_quadrature(int degree);

/// Gauss rule on [0,1] for the weight (1-t)^alpha, alpha in {0,1}.
void gauss_jacobi_unit(int n, int alpha, std::vector<double>& x, std::vector<double>& w);

} // namespace surfstokes
