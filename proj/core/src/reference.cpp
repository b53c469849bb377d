#include "surfstokes/reference.hpp"

#include "surfstokes/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace surfstokes {

LagrangeBasis::LagrangeBasis(int order) : order_(order)
{
    if (order < 1 || order > 8) {
        throw InvalidOrder("Lagrange order must be in 1..8");
    }
    const int m = order;
    const double h = 1.0 / m;
    nodes_ = {Vec2(0, 0), Vec2(1, 0), Vec2(0, 1)};
    const Vec2 corners[3] = {Vec2(0, 0), Vec2(1, 0), Vec2(0, 1)};
    for (int e = 0; e < 3; ++e) {
        for (int s = 1; s < m; ++s) {
            nodes_.push_back(corners[e] + (s * h) * (corners[(e + 1) % 3] - corners[e]));
        }
    }
    for (int j = 1; j < m - 1; ++j) {
        for (int i = 1; i + j < m; ++i) {
            nodes_.emplace_back(i * h, j * h);
        }
    }
    for (int deg = 0; deg <= m; ++deg) {
        for (int a = deg; a >= 0; --a) {
            exponents_.push_back({a, deg - a});
        }
    }
    const auto n = static_cast<Eigen::Index>(nodes_.size());
    Eigen::MatrixXd vander(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            const auto& e = exponents_[static_cast<std::size_t>(j)];
            vander(i, j) = std::pow(nodes_[static_cast<std::size_t>(i)][0], e[0]) *
                           std::pow(nodes_[static_cast<std::size_t>(i)][1], e[1]);
        }
    }
    coeffs_ = vander.fullPivLu().inverse();
}

void LagrangeBasis::values(const Vec2& xi, VecX& out) const
{
    const auto n = static_cast<Eigen::Index>(exponents_.size());
    VecX mono(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const auto& e = exponents_[static_cast<std::size_t>(j)];
        mono[j] = std::pow(xi[0], e[0]) * std::pow(xi[1], e[1]);
    }
    out = coeffs_.transpose() * mono;
}

void LagrangeBasis::evaluate(const Vec2& xi, VecX& val, Eigen::MatrixX2d& grad, Eigen::MatrixX3d* hess) const
{
    const auto n = static_cast<Eigen::Index>(exponents_.size());
    // powers[k] = xi^k for k in [0, m]
    std::vector<double> px(static_cast<std::size_t>(order_) + 1);
    std::vector<double> py(static_cast<std::size_t>(order_) + 1);
    px[0] = py[0] = 1.0;
    for (int k = 1; k <= order_; ++k) {
        px[static_cast<std::size_t>(k)] = px[static_cast<std::size_t>(k) - 1] * xi[0];
        py[static_cast<std::size_t>(k)] = py[static_cast<std::size_t>(k) - 1] * xi[1];
    }
    const auto pw = [](const std::vector<double>& p, int k) { return k < 0 ? 0.0 : p[static_cast<std::size_t>(k)]; };
    Eigen::MatrixXd mono(n, hess != nullptr ? 6 : 3);
    for (Eigen::Index j = 0; j < n; ++j) {
        const int a = exponents_[static_cast<std::size_t>(j)][0];
        const int b = exponents_[static_cast<std::size_t>(j)][1];
        mono(j, 0) = pw(px, a) * pw(py, b);
        mono(j, 1) = a * pw(px, a - 1) * pw(py, b);
        mono(j, 2) = b * pw(px, a) * pw(py, b - 1);
        if (hess != nullptr) {
            mono(j, 3) = a * (a - 1) * pw(px, a - 2) * pw(py, b);
            mono(j, 4) = a * b * pw(px, a - 1) * pw(py, b - 1);
            mono(j, 5) = b * (b - 1) * pw(px, a) * pw(py, b - 2);
        }
    }
    const Eigen::MatrixXd r = coeffs_.transpose() * mono;
    val = r.col(0);
    grad = r.middleCols(1, 2);
    if (hess != nullptr) {
        *hess = r.middleCols(3, 3);
    }
}

void gauss_jacobi_unit(int n, int alpha, std::vector<double>& x, std::vector<double>& w)
{
    if (n < 1 || (alpha != 0 && alpha != 1)) {
        throw DegenerateInput("gauss_jacobi_unit: need n >= 1 and alpha in {0,1}");
    }
    // Golub-Welsch on the monic Jacobi(alpha, 0) recurrence over [-1,1].
    const double a = alpha;
    const double b = 0.0;
    Eigen::MatrixXd jm = Eigen::MatrixXd::Zero(n, n);
    for (int k = 0; k < n; ++k) {
        const double s = 2.0 * k + a + b;
        jm(k, k) = (s == 0.0) ? (b - a) / (a + b + 2.0) : (b * b - a * a) / (s * (s + 2.0));
        if (k + 1 < n) {
            const double kk = k + 1.0;
            const double t = 2.0 * kk + a + b;
            const double beta = 4.0 * kk * (kk + a) * (kk + b) * (kk + a + b) / (t * t * (t + 1.0) * (t - 1.0));
            jm(k, k + 1) = jm(k + 1, k) = std::sqrt(beta);
        }
    }
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jm);
    constexpr double mu0 = 2.0; // integral of (1-t)^alpha over [-1,1] for both alphas
    const double scale = alpha == 0 ? 0.5 : 0.25; // maps the weight to [0,1]
    x.resize(static_cast<std::size_t>(n));
    w.resize(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const double v0 = eig.eigenvectors()(0, k);
        x[static_cast<std::size_t>(k)] = 0.5 * (eig.eigenvalues()[k] + 1.0);
        w[static_cast<std::size_t>(k)] = mu0 * v0 * v0 * scale;
    }
}

QuadratureRule triangle_quadrature(int degree)
{
    if (degree < 0) {
        throw DegenerateInput("quadrature degree must be non-negative");
    }
    const int n = (degree + 2) / 2; // ceil((degree + 1) / 2)
    std::vector<double> xu;
    std::vector<double> wu;
    std::vector<double> xv;
    std::vector<double> wv;
    gauss_jacobi_unit(n, 0, xu, wu);
    gauss_jacobi_unit(n, 1, xv, wv);
    QuadratureRule q;
    q.degree = degree;
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const double v = xv[static_cast<std::size_t>(j)];
            q.points.emplace_back(xu[static_cast<std::size_t>(i)] * (1.0 - v), v);
            q.weights.push_back(wu[static_cast<std::size_t>(i)] * wv[static_cast<std::size_t>(j)]);
        }
    }
    return q;
}

} // namespace surfstokes
