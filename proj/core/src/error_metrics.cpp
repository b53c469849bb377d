#include "surfstokes/error_metrics.hpp"

#include "surfstokes/errors.hpp"

#include <cmath>
#include <cstdio>

namespace surfstokes {

ExactFields exact_fields(const ManufacturedCase& c)
{
    return {[c](const Vec3& x) { return c.exact_u(x); }, [c](const Vec3& x) { return c.exact_grad_u(x); },
            [c](const Vec3& x) { return c.exact_p(x); }, [c](const Vec3& x) { return c.exact_grad_p(x); }};
}

DiscreteFields discrete_fields(const TaylorHoodSolution& s)
{
    return {&s.velocity_space, &s.u, &s.pressure_space, &s.p, s.unknowns()};
}

DiscreteFields discrete_fields(const StreamFunctionSolution& s)
{
    return {&s.velocity_space, &s.u, &s.pressure_space, &s.p, s.unknowns()};
}

namespace {

struct PointSample {
    double w;
    Vec3 uh;
    Mat3 grad_uh; ///< P_h (grad u_h)
    double ph;
    Vec3 grad_ph;
    Vec3 u;
    Mat3 grad_u; ///< P_h grad u P_h
    double p;
    Vec3 grad_p; ///< P_h grad p
    double un;
    double div;
};

} // namespace

ErrorRecord compute_errors(const DiscreteFields& sol, const ExactFields& exact, std::optional<int> quadrature_degree)
{
    const CurvedSurface& surface = sol.velocity_space->surface();
    const int k = surface.order();
    const AssemblyContext ctx(surface, quadrature_degree ? *quadrature_degree : default_quadrature_degree(k));
    const BasisTable& tu = ctx.table(sol.velocity_space->order());
    const BasisTable& tp = ctx.table(sol.pressure_space->order());
    const std::size_t nt = surface.num_triangles();
    const std::size_t nq = ctx.num_points();

    std::vector<PointSample> samples(nt * nq);
    parallel_blocks(nt, [&](std::size_t begin, std::size_t end) {
        for (std::size_t t = begin; t < end; ++t) {
            const int* ud = sol.velocity_space->scalar().dofmap().triangle(t);
            const int* pd = sol.pressure_space->dofmap().triangle(t);
            for (std::size_t q = 0; q < nq; ++q) {
                const QuadPointGeometry& g = ctx.geometry(t, q);
                const Mat3 proj = g.projector();
                PointSample s{};
                s.w = ctx.weight(t, q);
                const Eigen::MatrixX3d gu = ctx.gradients(tu, t, q);
                const VecX& vu = tu.values[q];
                s.uh.setZero();
                Mat3 grad = Mat3::Zero();
                for (Eigen::Index a = 0; a < vu.size(); ++a) {
                    Vec3 c;
                    for (int i = 0; i < 3; ++i) {
                        c[i] = (*sol.u)[VectorSpace::index(ud[a], i)];
                    }
                    s.uh += vu[a] * c;
                    grad += c * gu.row(a);
                }
                s.grad_uh = proj * grad;
                const Eigen::MatrixX3d gp = ctx.gradients(tp, t, q);
                const VecX& vp = tp.values[q];
                s.ph = 0.0;
                s.grad_ph.setZero();
                for (Eigen::Index a = 0; a < vp.size(); ++a) {
                    const double c = (*sol.p)[pd[a]];
                    s.ph += c * vp[a];
                    s.grad_ph += c * gp.row(a).transpose();
                }
                s.u = exact.u(g.x);
                s.grad_u = proj * exact.grad_u(g.x) * proj;
                s.p = exact.p(g.x);
                s.grad_p = proj * exact.grad_p(g.x);
                s.un = s.uh.dot(g.normal_improved);
                s.div = s.grad_uh.trace();
                samples[t * nq + q] = s;
            }
        }
    });

    double area = 0.0;
    double mean_ph = 0.0;
    double mean_p = 0.0;
    for (const auto& s : samples) {
        area += s.w;
        mean_ph += s.w * s.ph;
        mean_p += s.w * s.p;
    }
    mean_ph /= area;
    mean_p /= area;

    ErrorRecord r;
    for (const auto& s : samples) {
        r.l2_u += s.w * (s.uh - s.u).squaredNorm();
        r.h1semi_u += s.w * (s.grad_uh - s.grad_u).squaredNorm();
        const double dp = (s.ph - mean_ph) - (s.p - mean_p);
        r.l2_p += s.w * dp * dp;
        r.h1semi_p += s.w * (s.grad_ph - s.grad_p).squaredNorm();
        r.l2_un += s.w * s.un * s.un;
        r.l2_div += s.w * s.div * s.div;
    }
    r.l2_u = std::sqrt(r.l2_u);
    r.h1semi_u = std::sqrt(r.h1semi_u);
    r.l2_p = std::sqrt(r.l2_p);
    r.h1semi_p = std::sqrt(r.h1semi_p);
    r.l2_un = std::sqrt(r.l2_un);
    r.l2_div = std::sqrt(r.l2_div);
    r.h = longest_edge(surface);
    r.dofs = sol.dofs;
    r.elements = static_cast<long>(nt);
    return r;
}

double norm_value(const ErrorRecord& r, std::size_t which)
{
    switch (which) {
    case 0:
        return r.l2_u;
    case 1:
        return r.h1semi_u;
    case 2:
        return r.l2_p;
    case 3:
        return r.h1semi_p;
    case 4:
        return r.l2_un;
    case 5:
        return r.l2_div;
    default:
        throw DegenerateInput("norm index out of range");
    }
}

EocSeries eoc(const std::vector<double>& h, const std::vector<double>& e)
{
    if (h.size() != e.size() || h.size() < 2) {
        throw DegenerateInput("convergence orders need at least two records");
    }
    for (std::size_t i = 0; i < h.size(); ++i) {
        if (!(e[i] > 0.0) || !(h[i] > 0.0)) {
            throw DegenerateInput("convergence orders need positive errors and mesh sizes");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (h[i] == h[j]) {
                throw DegenerateInput("convergence orders need distinct mesh sizes");
            }
        }
    }
    EocSeries s;
    for (std::size_t i = 0; i + 1 < h.size(); ++i) {
        s.per_interval.push_back(std::log(e[i] / e[i + 1]) / std::log(h[i] / h[i + 1]));
    }
    const std::size_t first = h.size() >= 3 ? h.size() - 3 : 0;
    const auto n = static_cast<double>(h.size() - first);
    double sx = 0.0;
    double sy = 0.0;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = first; i < h.size(); ++i) {
        const double x = std::log(h[i]);
        const double y = std::log(e[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    s.regression = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return s;
}

std::array<EocSeries, 6> eoc(const std::vector<ErrorRecord>& records)
{
    std::vector<double> h;
    for (const auto& r : records) {
        h.push_back(r.h);
    }
    std::array<EocSeries, 6> out;
    for (std::size_t k = 0; k < 6; ++k) {
        std::vector<double> e;
        for (const auto& r : records) {
            e.push_back(norm_value(r, k));
        }
        out[k] = eoc(h, e);
    }
    return out;
}

std::string csv_header() { return "h,l2_u,h1semi_u,l2_p,h1semi_p,l2_un,l2_div,dofs,elements"; }

std::string csv_row(const ErrorRecord& r)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, "%.12e,%.12e,%.12e,%.12e,%.12e,%.12e,%.12e,%ld,%ld", r.h, r.l2_u, r.h1semi_u,
                  r.l2_p, r.h1semi_p, r.l2_un, r.l2_div, r.dofs, r.elements);
    return buf;
}

std::string to_csv(const std::vector<ErrorRecord>& records)
{
    std::string out = csv_header() + "\n";
    for (const auto& r : records) {
        out += csv_row(r) + "\n";
    }
    return out;
}

} // namespace surfstokes
