#include "surfstokes/assembly.hpp"
#include "surfstokes/errors.hpp"
#include "surfstokes/linear_solve.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace surfstokes;

namespace {

// Symmetric indefinite saddle-point matrix [A B^T; B 0] with A = 1D Laplacian + I.
SparseMatrix saddle(int n, int m)
{
    std::vector<Eigen::Triplet<double>> t;
    for (int i = 0; i < n; ++i) {
        t.emplace_back(i, i, 3.0);
        if (i + 1 < n) {
            t.emplace_back(i, i + 1, -1.0);
            t.emplace_back(i + 1, i, -1.0);
        }
    }
    for (int j = 0; j < m; ++j) {
        t.emplace_back(n + j, 2 * j, 1.0);
        t.emplace_back(2 * j, n + j, 1.0);
        t.emplace_back(n + j, 2 * j + 1, -1.0);
        t.emplace_back(2 * j + 1, n + j, -1.0);
    }
    SparseMatrix a(n + m, n + m);
    a.setFromTriplets(t.begin(), t.end());
    return a;
}

VecX random_vector(int n, unsigned seed)
{
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    VecX v(n);
    for (int i = 0; i < n; ++i) {
        v[i] = u(rng);
    }
    return v;
}

} // namespace

TEST(LinearSolve, DirectSolveMeetsResidualContract)
{
    const SparseMatrix a = saddle(200, 60);
    const VecX b = random_vector(260, 1);
    const LinearSolution s = solve(ConstrainedSystem{a, b, true});
    EXPECT_LE(s.diagnostics.relative_residual, 1e-10);
    EXPECT_LE((a * s.x - b).norm() / b.norm(), 1e-10);
    EXPECT_EQ(s.diagnostics.unknowns, 260);
}

TEST(LinearSolve, MinresSolvesSymmetricIndefiniteSystems)
{
    const SparseMatrix a = saddle(200, 60);
    const VecX b = random_vector(260, 2);
    const LinearSolution s = solve(ConstrainedSystem{a, b, true}, SolverOptions{SolverKind::minres, 1e-10});
    EXPECT_LE((a * s.x - b).norm() / b.norm(), 1e-10);
    EXPECT_EQ(s.diagnostics.method, "minres");
}

TEST(LinearSolve, FactorisationIsReusable)
{
    const SparseMatrix a = saddle(100, 30);
    const LinearSolver solver(a);
    for (unsigned seed = 0; seed < 3; ++seed) {
        const VecX b = random_vector(130, seed);
        EXPECT_LE((a * solver.solve(b).x - b).norm() / b.norm(), 1e-10);
    }
}

TEST(LinearSolve, ZeroRightHandSideGivesZero)
{
    const SparseMatrix a = saddle(50, 10);
    const LinearSolution s = solve(ConstrainedSystem{a, VecX::Zero(60), true});
    EXPECT_EQ(s.x.norm(), 0.0);
}

TEST(LinearSolve, SingularSystemIsReported)
{
    SparseMatrix a(4, 4);
    a.insert(0, 0) = 1.0;
    a.insert(1, 1) = 1.0;
    a.makeCompressed();
    EXPECT_THROW((void)solve(ConstrainedSystem{a, VecX::Ones(4), true}), SingularSystem);
}

TEST(LinearSolve, MeanConstraintRemovesLaplacianKernel)
{
    const CurvedSurface cs(icosphere(2), LevelSetField::sphere(), 2);
    const AssemblyContext ctx(cs, 7);
    const ScalarSpace s(cs, 2);
    const SparseMatrix k = assemble_stiffness(ctx, s);
    const VecX m = load_constant(ctx, s);
    // Right-hand side: mass times a zero-mean interpolant of z.
    const VecX rhs_u = assemble_mass_scalar(ctx, s) * s.interpolate([](const Vec3& x) { return x[2]; });
    VecX rhs(s.dim() + 1);
    rhs << rhs_u, 0.0;
    const LinearSolution sol = solve(ConstrainedSystem{append_constraint(k, m), rhs, true});
    EXPECT_LE(sol.diagnostics.relative_residual, 1e-10);
    EXPECT_LT(std::abs(m.dot(sol.x.head(s.dim()))), 1e-12);
    // -Lap z = 2 z on the unit sphere.
    const VecX exact = 0.5 * s.interpolate([](const Vec3& x) { return x[2]; });
    EXPECT_LT((sol.x.head(s.dim()) - exact).cwiseAbs().maxCoeff(), 2e-2);
}

TEST(LinearSolve, BlockMatrixPlacesBlocks)
{
    SparseMatrix a(2, 2);
    a.insert(0, 1) = 2.0;
    SparseMatrix b(1, 2);
    b.insert(0, 0) = 5.0;
    const SparseMatrix bt = b.transpose();
    const Eigen::MatrixXd m(block_matrix({{&a, &bt}, {&b, nullptr}}, {2, 1}, {2, 1}));
    Eigen::MatrixXd expected(3, 3);
    expected << 0, 2, 5, 0, 0, 0, 5, 0, 0;
    EXPECT_EQ(m, expected);
}

TEST(LinearSolve, SizeMismatchIsRejected)
{
    const SparseMatrix a = saddle(10, 2);
    EXPECT_THROW((void)solve(ConstrainedSystem{a, VecX::Ones(3), true}), DegenerateInput);
}
