#include "surfstokes/levelset.hpp"

#include "surfstokes/errors.hpp"

#include <cmath>
#include <sstream>

namespace surfstokes {

LevelSetField LevelSetField::sphere(double radius)
{
    if (!(radius > 0.0)) {
        throw DegenerateInput("sphere radius must be positive");
    }
    return {SurfaceKind::sphere, radius, 0.0};
}

LevelSetField LevelSetField::plane(double offset) { return {SurfaceKind::plane, offset, 0.0}; }

LevelSetField LevelSetField::biconcave(double c, double d)
{
    if (!(c > 0.0) || d < 0.0) {
        throw DegenerateInput("biconcave shape needs c > 0 and d >= 0");
    }
    return {SurfaceKind::biconcave, c, d};
}

std::string LevelSetField::describe() const
{
    std::ostringstream os;
    os.precision(17);
    switch (kind_) {
    case SurfaceKind::sphere:
        os << "sphere(radius=" << a_ << ")";
        break;
    case SurfaceKind::plane:
        os << "plane(offset=" << a_ << ")";
        break;
    case SurfaceKind::biconcave:
        os << "biconcave(c=" << a_ << ", d=" << b_ << ")";
        break;
    }
    return os.str();
}

double LevelSetField::value(const Vec3& x) const
{
    return evaluate(std::array<double, 3>{x[0], x[1], x[2]});
}

Vec3 LevelSetField::gradient(const Vec3& x) const
{
    const auto t = taylor<1>(x);
    return {t.coeff(1), t.coeff(2), t.coeff(3)};
}

Mat3 LevelSetField::hessian(const Vec3& x) const { return eval_jet3(*this, x).hessian; }

Jet3 eval_jet3(const LevelSetField& field, const Vec3& x)
{
    const auto t = field.taylor<3>(x);
    Jet3 j;
    j.value = t.value();
    for (int i = 0; i < 3; ++i) {
        std::array<int, 3> e{};
        e[static_cast<std::size_t>(i)] = 1;
        j.gradient[i] = t.derivative(e[0], e[1], e[2]);
        for (int k = 0; k < 3; ++k) {
            auto f = e;
            ++f[static_cast<std::size_t>(k)];
            j.hessian(i, k) = t.derivative(f[0], f[1], f[2]);
            for (int l = 0; l < 3; ++l) {
                auto g = f;
                ++g[static_cast<std::size_t>(l)];
                j.third[static_cast<std::size_t>(i)](k, l) = t.derivative(g[0], g[1], g[2]);
            }
        }
    }
    return j;
}

SurfacePointFrame frame(const LevelSetField& field, const Vec3& x)
{
    const Jet3 j = eval_jet3(field, x);
    const double g = j.gradient.norm();
    if (g < 1e-12) {
        throw DegenerateGradient("level-set gradient vanishes at the query point");
    }
    SurfacePointFrame f;
    f.point = x;
    f.normal = j.gradient / g;
    f.projector = Mat3::Identity() - f.normal * f.normal.transpose();
    f.weingarten = f.projector * j.hessian * f.projector / g;
    f.mean = f.weingarten.trace();
    f.gauss = 0.5 * (f.mean * f.mean - (f.weingarten * f.weingarten).trace());
    return f;
}

Vec3 closest_point(const LevelSetField& field, const Vec3& x, double tol, int max_iter)
{
    Vec3 y = x;
    int iter = 0;
    for (; iter < max_iter; ++iter) {
        const double phi = field.value(y);
        if (std::abs(phi) < 1e-10) {
            break;
        }
        const Vec3 g = field.gradient(y);
        const double g2 = g.squaredNorm();
        if (g2 < 1e-24) {
            throw DegenerateGradient("level-set gradient vanishes during projection");
        }
        y -= phi / g2 * g;
    }
    if (iter == max_iter) {
        throw NoConvergence("closest point: first-order phase did not reach |phi| < 1e-10");
    }

    Vec3 g = field.gradient(y);
    double lambda = (x - y).dot(g) / g.squaredNorm();
    for (; iter <= max_iter; ++iter) {
        const Jet3 j = eval_jet3(field, y);
        g = j.gradient;
        const double gn = g.norm();
        if (gn < 1e-12) {
            throw DegenerateGradient("level-set gradient vanishes during projection");
        }
        const Vec3 n = g / gn;
        const Vec3 r = y - x;
        const Vec3 tangential = r - n * n.dot(r);
        if (std::abs(j.value) <= tol && tangential.norm() <= tol) {
            return y;
        }
        Eigen::Matrix4d jac;
        jac.topLeftCorner<3, 3>() = Mat3::Identity() + lambda * j.hessian;
        jac.topRightCorner<3, 1>() = g;
        jac.bottomLeftCorner<1, 3>() = g.transpose();
        jac(3, 3) = 0.0;
        Eigen::Vector4d rhs;
        rhs.head<3>() = -(r + lambda * g);
        rhs[3] = -j.value;
        const Eigen::Vector4d step = jac.partialPivLu().solve(rhs);
        y += step.head<3>();
        lambda += step[3];
    }
    throw NoConvergence("closest point: Newton phase did not converge");
}

Vec3 radial_point(const LevelSetField& field, const Vec3& direction)
{
    const double len = direction.norm();
    if (len == 0.0) {
        throw DegenerateInput("radial_point: zero direction");
    }
    const Vec3 dir = direction / len;
    const auto phi = [&](double t) { return field.value(t * dir); };
    if (!(phi(0.0) < 0.0)) {
        throw DegenerateInput("radial_point: surface does not enclose the origin");
    }
    double lo = 0.0;
    double hi = 0.5;
    int doublings = 0;
    while (phi(hi) <= 0.0) {
        lo = hi;
        hi *= 2.0;
        if (++doublings > 60) {
            throw NoConvergence("radial_point: ray does not leave the enclosed region");
        }
    }
    // Safeguarded Newton inside the bracket [lo, hi].
    double t = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        const double f = phi(t);
        if (f == 0.0) {
            break;
        }
        if (f < 0.0) {
            lo = t;
        } else {
            hi = t;
        }
        const double df = field.gradient(t * dir).dot(dir);
        double next = df > 0.0 ? t - f / df : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) {
            next = 0.5 * (lo + hi);
        }
        if (std::abs(next - t) <= 1e-16 * std::max(1.0, t) || hi - lo <= 1e-16 * hi) {
            t = next;
            break;
        }
        t = next;
    }
    return t * dir;
}

} // namespace surfstokes
