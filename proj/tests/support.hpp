#pragma once

// Shared oracles and fixtures for the test suites. Nothing here calls into the
// jet machinery, so derivative checks against it are independent.

#include "surfstokes/levelset.hpp"
#include "surfstokes/mesh.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <vector>

namespace surfstokes::testing {

/// Deterministic points on the surface: random directions pushed radially.
inline std::vector<Vec3> surface_points(const LevelSetField& field, int count, unsigned seed = 7)
{
    std::mt19937 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<Vec3> out;
    while (static_cast<int>(out.size()) < count) {
        const Vec3 dir(g(rng), g(rng), g(rng));
        if (dir.norm() < 1e-3) {
            continue;
        }
        out.push_back(radial_point(field, dir.normalized()));
    }
    return out;
}

/// Fourth-order central difference of f along e_axis.
template <class F>
auto central_diff(F&& f, const Vec3& x, int axis, double h)
{
    Vec3 e = Vec3::Zero();
    e[axis] = h;
    return ((f(x - 2.0 * e) - f(x + 2.0 * e)) + 8.0 * (f(x + e) - f(x - e))) / (12.0 * h);
}

/// Gradient of a scalar function by central differences.
inline Vec3 fd_gradient(const std::function<double(const Vec3&)>& f, const Vec3& x, double h)
{
    Vec3 g;
    for (int a = 0; a < 3; ++a) {
        g[a] = central_diff(f, x, a, h);
    }
    return g;
}

/// d v_i / d x_j by central differences.
inline Mat3 fd_jacobian(const std::function<Vec3(const Vec3&)>& v, const Vec3& x, double h)
{
    Mat3 j;
    for (int a = 0; a < 3; ++a) {
        j.col(a) = central_diff(v, x, a, h);
    }
    return j;
}

/// Hand-written level-set gradients, kept apart from the library's.
inline Vec3 sphere_gradient(const Vec3& x) { return 2.0 * x; }

inline Vec3 biconcave_gradient(double d, const Vec3& x)
{
    const double s = d * d + x.squaredNorm();
    const double a = 6.0 * s * s;
    return {a * x[0], a * x[1] - 16.0 * d * d * x[1], a * x[2] - 16.0 * d * d * x[2]};
}

/// Torus made of n x m quads split in two; closed, orientable, V - E + F = 0.
inline LinearSurfaceMesh torus_mesh(int n = 12, int m = 8, double big = 1.0, double small = 0.4)
{
    std::vector<Vec3> v;
    std::vector<Triangle> t;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < m; ++j) {
            const double u = 2.0 * M_PI * i / n;
            const double w = 2.0 * M_PI * j / m;
            v.emplace_back((big + small * std::cos(w)) * std::cos(u), (big + small * std::cos(w)) * std::sin(u),
                           small * std::sin(w));
        }
    }
    auto id = [&](int i, int j) { return ((i + n) % n) * m + (j + m) % m; };
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < m; ++j) {
            t.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
            t.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
        }
    }
    return LinearSurfaceMesh(std::move(v), std::move(t));
}

/// Least-squares slope of log e against log h.
inline double loglog_slope(const std::vector<double>& h, const std::vector<double>& e)
{
    const std::size_t n = h.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = std::log(h[i]);
        const double y = std::log(e[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace surfstokes::testing
