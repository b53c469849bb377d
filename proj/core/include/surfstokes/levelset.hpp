#pragma once

// Analytic level-set surfaces and their exact differential geometry.

#include "surfstokes/taylor_jet.hpp"
#include "surfstokes/types.hpp"

#include <array>
#include <string>

namespace surfstokes {

enum class SurfaceKind { sphere, plane, biconcave };

/// Polynomial level-set function phi whose zero set is the surface.
///
///   sphere:    |x|^2 - r^2
///   plane:     z - offset
///   biconcave: (d^2 + |x|^2)^3 - 8 d^2 (y^2 + z^2) - c^4
class LevelSetField {
public:
    static LevelSetField sphere(double radius = 1.0);
    static LevelSetField plane(double offset = 0.0);
    static LevelSetField biconcave(double c, double d);

    [[nodiscard]] SurfaceKind kind() const noexcept { return kind_; }
    [[nodiscard]] double radius() const noexcept { return a_; }
    [[nodiscard]] double offset() const noexcept { return a_; }
    [[nodiscard]] double c() const noexcept { return a_; }
    [[nodiscard]] double d() const noexcept { return b_; }
    [[nodiscard]] std::string describe() const;

    /// phi evaluated on any arithmetic type closed under +, -, * (doubles and jets).
    template <class T>
    T evaluate(const std::array<T, 3>& x) const
    {
        switch (kind_) {
        case SurfaceKind::sphere:
            return x[0] * x[0] + x[1] * x[1] + x[2] * x[2] - a_ * a_;
        case SurfaceKind::plane:
            return x[2] - a_;
        case SurfaceKind::biconcave: {
            const T s = x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + b_ * b_;
            const double c2 = a_ * a_;
            return s * s * s - 8.0 * b_ * b_ * (x[1] * x[1] + x[2] * x[2]) - c2 * c2;
        }
        }
        return T(0.0);
    }

    /// Taylor expansion of phi around x up to order N.
    template <int N>
    TaylorJet<N> taylor(const Vec3& x) const
    {
        return evaluate(seed<N>(x));
    }

    [[nodiscard]] double value(const Vec3& x) const;
    [[nodiscard]] Vec3 gradient(const Vec3& x) const;
    [[nodiscard]] Mat3 hessian(const Vec3& x) const;

private:
    LevelSetField(SurfaceKind kind, double a, double b) : kind_(kind), a_(a), b_(b) {}

    SurfaceKind kind_;
    double a_;
    double b_;
};

/// Value and derivatives of phi through third order at a point.
struct Jet3 {
    double value = 0.0;
    Vec3 gradient = Vec3::Zero();
    Mat3 hessian = Mat3::Zero();
    std::array<Mat3, 3> third{Mat3::Zero(), Mat3::Zero(), Mat3::Zero()}; ///< third[i](j,k)
};

[[nodiscard]] Jet3 eval_jet3(const LevelSetField& field, const Vec3& x);

/// Normal, projector and curvature of the level set through x, with
/// n = grad(phi)/|grad(phi)| and H = P hess(phi) P / |grad(phi)|.
struct SurfacePointFrame {
    Vec3 point = Vec3::Zero();
    Vec3 normal = Vec3::Zero();
    Mat3 projector = Mat3::Identity();
    Mat3 weingarten = Mat3::Zero();
    double gauss = 0.0;
    double mean = 0.0; ///< tr(H), the sum of principal curvatures
};

[[nodiscard]] SurfacePointFrame frame(const LevelSetField& field, const Vec3& x);

/// Nearest point on the zero level set: first-order steps until |phi| < 1e-10,
/// then Lagrange-Newton on min |y - x|^2 subject to phi(y) = 0.
[[nodiscard]] Vec3 closest_point(const LevelSetField& field, const Vec3& x, double tol = 1e-12,
                                 int max_iter = 50);

/// Intersection of the ray {t * direction, t > 0} with the surface. Requires the
/// surface to be star-shaped about the origin (phi(0) < 0).
[[nodiscard]] Vec3 radial_point(const LevelSetField& field, const Vec3& direction);

} // namespace surfstokes
