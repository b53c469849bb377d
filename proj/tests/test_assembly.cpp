#include "oracles.hpp"

#include "surfstokes/assembly.hpp"

#include <gtest/gtest.h>


using namespace surfstokes;
using namespace surfstokes::testing;

namespace {

class FlatPatch : public ::testing::TestWithParam<int> {
protected:
    void SetUp() override
    {
        k_ = GetParam();
        mesh_ = planar_patch();
        surface_ = std::make_unique<CurvedSurface>(mesh_, LevelSetField::plane(0.0), k_);
        ctx_ = std::make_unique<AssemblyContext>(*surface_, 2 * (k_ + 1) + 1);
    }
    int k_ = 0;
    LinearSurfaceMesh mesh_;
    std::unique_ptr<CurvedSurface> surface_;
    std::unique_ptr<AssemblyContext> ctx_;
};

constexpr double kTol = 1e-12;

} // namespace

TEST_P(FlatPatch, ScalarFormsMatchPlanarOracle)
{
    for (int m = k_ - 1; m <= k_ + 1; ++m) {
        if (m < 1) {
            continue;
        }
        const ScalarSpace s(*surface_, m);
        const Oracle o = oracle(mesh_, s);
        EXPECT_LT(max_diff(assemble_mass_scalar(*ctx_, s), o.mass), kTol) << "order " << m;
        EXPECT_LT(max_diff(assemble_stiffness(*ctx_, s), o.stiffness), kTol) << "order " << m;
        // No Gaussian curvature on a plane.
        EXPECT_LT(max_diff(assemble_stiffness_K(*ctx_, s), 2.0 * o.stiffness), kTol) << "order " << m;
        EXPECT_LT((load_constant(*ctx_, s) - o.integral).cwiseAbs().maxCoeff(), kTol) << "order " << m;
    }
}

TEST_P(FlatPatch, VectorFormsMatchPlanarOracle)
{
    const VectorSpace u(*surface_, k_);
    const Oracle o = oracle(mesh_, u.scalar());
    const int n = o.dim;
    Eigen::MatrixXd mass = Eigen::MatrixXd::Zero(3 * n, 3 * n);
    Eigen::MatrixXd penalty = Eigen::MatrixXd::Zero(3 * n, 3 * n);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(3 * n, 3 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int c = 0; c < 3; ++c) {
                mass(3 * i + c, 3 * j + c) = o.mass(i, j);
            }
            penalty(3 * i + 2, 3 * j + 2) = ctx_->eta() * o.mass(i, j);
            // Tangential components only: E(u):E(v) + Pu.Pv on a plane.
            for (int c = 0; c < 2; ++c) {
                for (int d = 0; d < 2; ++d) {
                    a(3 * i + c, 3 * j + d) = 0.5 * o.cross[static_cast<std::size_t>(d)][static_cast<std::size_t>(c)](i, j) +
                                              (c == d ? 0.5 * o.stiffness(i, j) + o.mass(i, j) : 0.0);
                }
            }
        }
    }
    EXPECT_LT(max_diff(assemble_mass_vector(*ctx_, u), mass), kTol);
    EXPECT_LT(max_diff(assemble_penalty(*ctx_, u), penalty), kTol * ctx_->eta());
    EXPECT_LT(max_diff(assemble_a_Th(*ctx_, u), a), kTol);
    EXPECT_NEAR(ctx_->eta(), 1.0 / std::pow(longest_edge(*surface_), 2), 1e-12);

    const Vec3 f(1.0, -2.0, 3.0);
    VecX lf = VecX::Zero(3 * n);
    for (int i = 0; i < n; ++i) {
        for (int c = 0; c < 3; ++c) {
            lf[3 * i + c] = f[c] * o.integral[i];
        }
    }
    EXPECT_LT((load_f(*ctx_, u, [&](const Vec3&) { return f; }) - lf).cwiseAbs().maxCoeff(), kTol);
}

TEST_P(FlatPatch, CouplingMatchesPlanarOracle)
{
    if (k_ < 2) {
        return;
    }
    const VectorSpace u(*surface_, k_);
    const ScalarSpace q(*surface_, k_ - 1);
    // int phi_j d_c psi_i, from the oracle's exact mixed integrals.
    const ElementCache cu = build_elements(mesh_, u.scalar());
    const ElementCache cq = build_elements(mesh_, q);
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(q.dim(), u.dim());
    for (std::size_t t = 0; t < mesh_.num_triangles(); ++t) {
        const LocalElement& eu = cu.elements[t];
        const LocalElement& eq = cq.elements[t];
        for (std::size_t i = 0; i < eq.basis.size(); ++i) {
            for (std::size_t j = 0; j < eu.basis.size(); ++j) {
                for (int c = 0; c < 2; ++c) {
                    b(cq.global[t][i], 3 * cu.global[t][j] + c) +=
                        integrate(multiply(eu.basis[j], eq.gradient[i][static_cast<std::size_t>(c)]), eu.area);
                }
            }
        }
    }
    EXPECT_LT(max_diff(assemble_b(*ctx_, u, q), b), kTol);
}

TEST_P(FlatPatch, StreamLoadMatchesPlanarOracle)
{
    const ScalarSpace s(*surface_, k_ + 1);
    const Oracle o = oracle(mesh_, s);
    const Vec3 f(0.5, 1.5, -1.0);
    // -2 int f . (e_z x grad xi) = -2 int (-f_x d_y xi + f_y d_x xi)
    const VecX expected = -2.0 * (-f[0] * o.gradient_integral[1] + f[1] * o.gradient_integral[0]);
    EXPECT_LT((load_g(*ctx_, s, [&](const Vec3&) { return f; }) - expected).cwiseAbs().maxCoeff(), kTol);
}

INSTANTIATE_TEST_SUITE_P(Orders, FlatPatch, ::testing::Values(1, 2, 3));

TEST(Assembly, SymmetricFormsAreSymmetricOnCurvedSurfaces)
{
    const LevelSetField field = LevelSetField::biconcave(0.95, 0.96);
    for (int k = 2; k <= 3; ++k) {
        const CurvedSurface cs(mesh_hierarchy_level(field, 2, 0), field, k);
        const AssemblyContext ctx(cs, default_quadrature_degree(k));
        const VectorSpace u(cs, k);
        const ScalarSpace s(cs, k + 1);
        for (const SparseMatrix& m : {assemble_a_Th(ctx, u), assemble_penalty(ctx, u), assemble_mass_vector(ctx, u),
                                      assemble_mass_scalar(ctx, s), assemble_stiffness(ctx, s),
                                      assemble_stiffness_K(ctx, s)}) {
            EXPECT_LE(symmetry_error(m), 1e-10 * std::max(1.0, Eigen::MatrixXd(m).cwiseAbs().maxCoeff()));
        }
    }
}

TEST(Assembly, MassAndStiffnessActOnConstantsAsExpected)
{
    // 1^T M 1 = area, S 1 = 0, and the areas agree with the context.
    const LevelSetField field = LevelSetField::biconcave(0.95, 0.8);
    const CurvedSurface cs(mesh_hierarchy_level(field, 1, 1), field, 3);
    const AssemblyContext ctx(cs, 9);
    const ScalarSpace s(cs, 3);
    const VecX one = VecX::Ones(s.dim());
    EXPECT_NEAR(one.dot(assemble_mass_scalar(ctx, s) * one), ctx.area(), 1e-12);
    EXPECT_NEAR(load_constant(ctx, s).sum(), ctx.area(), 1e-12);
    EXPECT_LT((assemble_stiffness(ctx, s) * one).cwiseAbs().maxCoeff(), 1e-11);
}

TEST(Assembly, ThreadCountDoesNotChangeResults)
{
    const LevelSetField field = LevelSetField::sphere();
    const CurvedSurface cs(icosphere(2), field, 2);
    const AssemblyContext ctx(cs, 7);
    const VectorSpace u(cs, 2);
    ::setenv("SURFSTOKES_THREADS", "1", 1);
    const Eigen::MatrixXd a1(assemble_a_Th(ctx, u));
    ::setenv("SURFSTOKES_THREADS", "4", 1);
    const Eigen::MatrixXd a4(assemble_a_Th(ctx, u));
    ::unsetenv("SURFSTOKES_THREADS");
    EXPECT_EQ((a1 - a4).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ(worker_count() >= 1, true);
}
