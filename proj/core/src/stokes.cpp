#include "surfstokes/stokes.hpp"

#include "surfstokes/errors.hpp"

namespace surfstokes {

namespace {

SparseMatrix column(const VecX& m)
{
    SparseMatrix c(m.size(), 1);
    std::vector<Eigen::Triplet<double>> t;
    for (Eigen::Index i = 0; i < m.size(); ++i) {
        if (m[i] != 0.0) {
            t.emplace_back(static_cast<int>(i), 0, m[i]);
        }
    }
    c.setFromTriplets(t.begin(), t.end());
    return c;
}

int quadrature_degree(const StokesOptions& o, int k)
{
    return o.quadrature_degree ? *o.quadrature_degree : default_quadrature_degree(k);
}

/// Solves [L m; m^T 0] [x; lambda] = [rhs; 0].
std::pair<VecX, SolveDiagnostics> solve_mean_free(const SparseMatrix& l, const VecX& m, const VecX& rhs,
                                                  const SolverOptions& opts)
{
    ConstrainedSystem sys{append_constraint(l, m), VecX::Zero(rhs.size() + 1), true};
    sys.rhs.head(rhs.size()) = rhs;
    auto sol = solve(sys, opts);
    sol.diagnostics.constraint_residual = std::abs(m.dot(sol.x.head(rhs.size())));
    return {sol.x.head(rhs.size()), sol.diagnostics};
}

} // namespace

TaylorHoodSolution solve_taylor_hood(std::shared_ptr<const CurvedSurface> surface, const VectorField& f,
                                     const StokesOptions& options)
{
    const int k = surface->order();
    if (k < 2) {
        throw InvalidOrder("Taylor-Hood needs geometry/velocity order k >= 2");
    }
    const AssemblyContext ctx(*surface, quadrature_degree(options, k), options.eta_override);
    TaylorHoodSolution s{surface, VectorSpace(*surface, k), ScalarSpace(*surface, k - 1), {}, {}, {}, 0.0, 0.0};

    const SparseMatrix a = assemble_a_Th(ctx, s.velocity_space);
    const SparseMatrix kp = assemble_penalty(ctx, s.velocity_space);
    const SparseMatrix at = a + kp;
    const SparseMatrix b = assemble_b(ctx, s.velocity_space, s.pressure_space);
    const SparseMatrix bt = b.transpose();
    const VecX m = load_constant(ctx, s.pressure_space);
    const SparseMatrix mc = column(m);
    const SparseMatrix mct = mc.transpose();

    const long nu = s.velocity_space.dim();
    const long np = s.pressure_space.dim();
    ConstrainedSystem sys;
    sys.matrix = block_matrix({{&at, &bt, nullptr}, {&b, nullptr, &mc}, {nullptr, &mct, nullptr}}, {nu, np, 1},
                              {nu, np, 1});
    sys.rhs = VecX::Zero(nu + np + 1);
    sys.rhs.head(nu) = load_f(ctx, s.velocity_space, f);

    const LinearSolution sol = solve(sys, options.solver);
    s.u = sol.x.head(nu);
    s.p = sol.x.segment(nu, np);
    s.diagnostics = sol.diagnostics;
    s.pressure_mean = m.dot(s.p);
    s.diagnostics.constraint_residual = std::abs(s.pressure_mean);
    const double un = s.u.norm();
    s.divergence_residual = un > 0.0 ? (b * s.u).norm() / un : 0.0;
    return s;
}

StreamFunctionSolution solve_stream_function(std::shared_ptr<const CurvedSurface> surface, const VectorField& f,
                                             const StokesOptions& options)
{
    const int k = surface->order();
    if (surface->mesh().euler_characteristic() != 2) {
        throw NotSimplyConnected("stream function formulation needs a genus-0 surface");
    }
    const AssemblyContext ctx(*surface, quadrature_degree(options, k), options.eta_override);
    StreamFunctionSolution s{surface,          ScalarSpace(*surface, k + 1), {}, {}, VectorSpace(*surface, k), {},
                             ScalarSpace(*surface, k), {}, {}, {}, {}, 0.0, 0.0};

    const ScalarSpace& v = s.stream_space;
    const SparseMatrix mass = assemble_mass_scalar(ctx, v);
    const SparseMatrix lap = assemble_stiffness(ctx, v);
    const SparseMatrix lapk = assemble_stiffness_K(ctx, v);
    const SparseMatrix neg_lapk = -lapk;
    const VecX m = load_constant(ctx, v);
    const SparseMatrix mc = column(m);
    const SparseMatrix mct = mc.transpose();
    const long n = v.dim();

    // Unknowns (vorticity, stream function, multiplier).
    ConstrainedSystem sys;
    sys.matrix = block_matrix({{&mass, &lap, nullptr}, {&lap, &neg_lapk, &mc}, {nullptr, &mct, nullptr}},
                              {n, n, 1}, {n, n, 1});
    sys.rhs = VecX::Zero(2 * n + 1);
    sys.rhs.segment(n, n) = load_g(ctx, v, f);
    const LinearSolution sol = solve(sys, options.solver);
    s.phi = sol.x.head(n);
    s.psi = sol.x.segment(n, n);
    s.diagnostics = sol.diagnostics;
    s.stream_mean = m.dot(s.psi);
    s.diagnostics.constraint_residual = std::abs(s.stream_mean);

    // Velocity: vector mass solve, done as one scalar factorisation with three right-hand sides.
    {
        const ScalarSpace& sc = s.velocity_space.scalar();
        const SparseMatrix ms = assemble_mass_scalar(ctx, sc);
        const VecX rhs = load_velocity_reconstruction(ctx, s.velocity_space, v, s.psi);
        const LinearSolver solver(ms, options.solver);
        s.u = VecX::Zero(s.velocity_space.dim());
        double worst = 0.0;
        for (int c = 0; c < 3; ++c) {
            VecX rc(sc.dim());
            for (int i = 0; i < sc.dim(); ++i) {
                rc[i] = rhs[VectorSpace::index(i, c)];
            }
            const LinearSolution part = solver.solve(rc);
            for (int i = 0; i < sc.dim(); ++i) {
                s.u[VectorSpace::index(i, c)] = part.x[i];
            }
            worst = std::max(worst, part.diagnostics.relative_residual);
            s.velocity_diagnostics = part.diagnostics;
        }
        s.velocity_diagnostics.relative_residual = worst;
    }

    // Pressure: Laplace-Beltrami solve with zero mean.
    {
        const ScalarSpace& q = s.pressure_space;
        const SparseMatrix lq = assemble_stiffness(ctx, q);
        const VecX mq = load_constant(ctx, q);
        const VecX rhs = load_pressure_reconstruction(ctx, q, v, s.psi, f);
        auto [p, diag] = solve_mean_free(lq, mq, rhs, options.solver);
        s.p = std::move(p);
        s.pressure_diagnostics = diag;
        s.pressure_mean = mq.dot(s.p);
    }
    return s;
}

} // namespace surfstokes
