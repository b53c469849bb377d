#include "surfstokes/benchmark.hpp"

#include "surfstokes/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

namespace surfstokes {

StokesFormulation parse_stokes_formulation(const std::string& s)
{
    if (s == "th") {
        return StokesFormulation::th;
    }
    if (s == "sf") {
        return StokesFormulation::sf;
    }
    throw ConfigError("unknown formulation '" + s + "' (expected th or sf)");
}

std::string to_string(StokesFormulation f) { return f == StokesFormulation::th ? "th" : "sf"; }

double d_zero_curvature(double c) { return std::sqrt(3.0 / 8.0 * std::pow(c, 8.0 / 3.0)); }

double parse_d(const std::string& s, double c)
{
    if (s == "d0") {
        return d_zero_curvature(c);
    }
    std::size_t used = 0;
    double d = 0.0;
    try {
        d = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != s.size() || s.empty() || !(d >= 0.0)) {
        throw ConfigError("invalid shape parameter d '" + s + "'");
    }
    return d;
}

Vec3 BenchmarkConfig::face_centre() const
{
    const double r2 = std::pow(c, 4.0 / 3.0) - d * d;
    if (!(r2 > 0.0)) {
        throw DegenerateInput("face centre undefined: need d^2 < c^(4/3)");
    }
    return {std::sqrt(r2), 0.0, 0.0};
}

std::array<double, 4> canonical_d_values(double c) { return {0.0, d_zero_curvature(c), 0.8, 0.96}; }

double bump(double r, double eps)
{
    const double s = 0.5 * (1.0 - std::tanh(3.0 * r / eps));
    return 36.0 * s * s * (1.0 - s) * (1.0 - s);
}

Vec3 benchmark_forcing(const BenchmarkConfig& cfg, const Vec3& x)
{
    const LevelSetField field = cfg.field();
    const Vec3 n = field.gradient(x).normalized();
    const Vec3 f0 = n.cross(Vec3::UnitX());
    const double rho = std::hypot(x[1], x[2]);
    const double chi = bump(x[0], cfg.eps) * bump(rho - cfg.ring_radius, cfg.eps);
    const double alpha = std::atan2(x[1], x[2]);
    return chi * 0.5 * (1.0 + std::sin(alpha)) * f0;
}

namespace {

constexpr int kLattice = 14; // 15 x 15 barycentric lattice
constexpr std::size_t kCandidates = 8;

/// Objective to maximise on triangle t: value and optionally reference-coordinate
/// gradient and Hessian.
using Objective = std::function<double(std::size_t, const Vec2&, Vec2*, Mat2*)>;

Vec2 clip_to_triangle(Vec2 xi)
{
    xi[0] = std::max(0.0, xi[0]);
    xi[1] = std::max(0.0, xi[1]);
    const double s = xi[0] + xi[1];
    if (s > 1.0) {
        xi -= Vec2::Constant(0.5 * (s - 1.0));
        xi[0] = std::clamp(xi[0], 0.0, 1.0);
        xi[1] = std::clamp(xi[1], 0.0, 1.0 - xi[0]);
    }
    return xi;
}

std::pair<Vec2, double> newton_maximise(const Objective& obj, std::size_t t, Vec2 xi)
{
    Vec2 g;
    Mat2 hm;
    double v = obj(t, xi, &g, &hm);
    for (int it = 0; it < 60; ++it) {
        const Eigen::SelfAdjointEigenSolver<Mat2> eig(hm);
        Vec2 step;
        if (eig.eigenvalues().maxCoeff() < 0.0) {
            step = -hm.ldlt().solve(g);
        } else {
            const double gn = g.norm();
            step = gn > 0.0 ? Vec2(g * std::min(0.05 / gn, 1.0 / (std::abs(eig.eigenvalues().maxCoeff()) + 1e-12)))
                            : Vec2::Zero();
        }
        if (step.norm() < 1e-14) {
            break;
        }
        double a = 1.0;
        bool improved = false;
        for (int k = 0; k < 30; ++k, a *= 0.5) {
            const Vec2 trial = clip_to_triangle(xi + a * step);
            const double tv = obj(t, trial, nullptr, nullptr);
            if (tv > v) {
                improved = (trial - xi).norm() > 1e-15;
                xi = trial;
                v = obj(t, xi, &g, &hm);
                break;
            }
        }
        if (!improved) {
            break;
        }
    }
    return {xi, v};
}

VortexResult locate(const CurvedSurface& surface, const Objective& obj, const Vec3& centre)
{
    std::vector<Vec2> lattice;
    for (int j = 0; j <= kLattice; ++j) {
        for (int i = 0; i + j <= kLattice; ++i) {
            lattice.emplace_back(static_cast<double>(i) / kLattice, static_cast<double>(j) / kLattice);
        }
    }
    const std::size_t nt = surface.num_triangles();
    std::vector<double> best(nt, -std::numeric_limits<double>::infinity());
    std::vector<Vec2> best_xi(nt, Vec2::Zero());
    std::vector<VecX> geo(lattice.size());
    for (std::size_t i = 0; i < lattice.size(); ++i) {
        surface.basis().values(lattice[i], geo[i]);
    }
    parallel_blocks(nt, [&](std::size_t begin, std::size_t end) {
        for (std::size_t t = begin; t < end; ++t) {
            const Eigen::Matrix3Xd c = surface.local_nodes(t);
            for (std::size_t i = 0; i < lattice.size(); ++i) {
                if ((c.row(0) * geo[i])(0) <= 0.0) {
                    continue;
                }
                const double v = obj(t, lattice[i], nullptr, nullptr);
                if (v > best[t]) {
                    best[t] = v;
                    best_xi[t] = lattice[i];
                }
            }
        }
    });
    std::vector<std::size_t> order(nt);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return best[a] > best[b]; });
    if (nt == 0 || !std::isfinite(best[order[0]])) {
        throw VortexNotFound("no sample of the discrete surface has x > 0");
    }
    double top = -std::numeric_limits<double>::infinity();
    Vec3 xv = Vec3::Zero();
    for (std::size_t c = 0; c < std::min(kCandidates, nt); ++c) {
        const std::size_t t = order[c];
        if (!std::isfinite(best[t])) {
            break;
        }
        const auto [xi, v] = newton_maximise(obj, t, best_xi[t]);
        const Vec3 x = surface.map(t, xi);
        if (x[0] > 0.0 && v > top) {
            top = v;
            xv = x;
        }
    }
    if (!(xv[0] > 1e-8)) {
        throw VortexNotFound("extremum lies on the x = 0 boundary of the search region");
    }
    VortexResult r;
    r.position = closest_point(surface.field(), xv);
    r.centre = centre;
    r.distance = (r.position - centre).norm();
    r.h = longest_edge(surface);
    r.value = top;
    return r;
}

} // namespace

VortexResult locate_vortex(const StreamFunctionSolution& s, const Vec3& centre)
{
    const ScalarSpace& space = s.stream_space;
    const Objective obj = [&](std::size_t t, const Vec2& xi, Vec2* g, Mat2* h) {
        VecX val;
        Eigen::MatrixX2d grad;
        Eigen::MatrixX3d hess;
        space.basis().evaluate(xi, val, grad, h != nullptr ? &hess : nullptr);
        const int* dofs = space.dofmap().triangle(t);
        VecX c(val.size());
        for (Eigen::Index i = 0; i < val.size(); ++i) {
            c[i] = s.psi[dofs[i]];
        }
        if (g != nullptr) {
            *g = grad.transpose() * c;
        }
        if (h != nullptr) {
            const Eigen::Vector3d hv = hess.transpose() * c;
            *h << hv[0], hv[1], hv[1], hv[2];
        }
        return c.dot(val);
    };
    return locate(*s.surface, obj, centre);
}

VortexResult locate_vortex(const TaylorHoodSolution& s, const Vec3& centre)
{
    const ScalarSpace& space = s.velocity_space.scalar();
    const Objective obj = [&](std::size_t t, const Vec2& xi, Vec2* g, Mat2* h) {
        VecX val;
        Eigen::MatrixX2d grad;
        Eigen::MatrixX3d hess;
        space.basis().evaluate(xi, val, grad, h != nullptr ? &hess : nullptr);
        const int* dofs = space.dofmap().triangle(t);
        Eigen::Matrix3Xd c(3, val.size());
        for (Eigen::Index i = 0; i < val.size(); ++i) {
            for (int d = 0; d < 3; ++d) {
                c(d, i) = s.u[VectorSpace::index(dofs[i], d)];
            }
        }
        const Vec3 u = c * val;
        if (g != nullptr) {
            const Mat32 du = c * grad;
            *g = -2.0 * du.transpose() * u;
            if (h != nullptr) {
                const Mat3 d2 = c * hess; // columns: d_xx, d_xy, d_yy of u
                Mat2 hu;
                hu << u.dot(d2.col(0)), u.dot(d2.col(1)), u.dot(d2.col(1)), u.dot(d2.col(2));
                *h = -2.0 * (du.transpose() * du + hu);
            }
        }
        return -u.squaredNorm();
    };
    VortexResult r = locate(*s.surface, obj, centre);
    r.value = std::sqrt(std::max(0.0, -r.value));
    return r;
}

VortexResult run_benchmark(const BenchmarkConfig& cfg)
{
    const LevelSetField field = cfg.field();
    auto surface = std::make_shared<const CurvedSurface>(
        mesh_hierarchy_level(field, cfg.base_level, cfg.level, cfg.smooth), field, cfg.k);
    const VectorField f = [&cfg](const Vec3& x) { return benchmark_forcing(cfg, x); };
    if (cfg.formulation == StokesFormulation::sf) {
        return locate_vortex(solve_stream_function(surface, f, cfg.options), cfg.face_centre());
    }
    return locate_vortex(solve_taylor_hood(surface, f, cfg.options), cfg.face_centre());
}

std::string benchmark_csv_header() { return "d,formulation,k,level,h,xv_x,xv_y,xv_z,distance"; }

std::string benchmark_csv_row(const BenchmarkConfig& cfg, const VortexResult& r)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, "%.10g,%s,%d,%d,%.12e,%.12e,%.12e,%.12e,%.12e", cfg.d,
                  to_string(cfg.formulation).c_str(), cfg.k, cfg.level, r.h, r.position[0], r.position[1],
                  r.position[2], r.distance);
    return buf;
}

} // namespace surfstokes
