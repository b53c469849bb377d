#include "surfstokes/linear_solve.hpp"

#include "surfstokes/errors.hpp"

#include <Eigen/UmfPackSupport>
#include <unsupported/Eigen/IterativeSolvers>

#include <cmath>
#include <sstream>

namespace surfstokes {

namespace {

/// Jacobi preconditioner on |diag(A)|, kept positive for indefinite systems.
class AbsDiagonalPreconditioner {
public:
    AbsDiagonalPreconditioner() = default;

    template <class MatType>
    explicit AbsDiagonalPreconditioner(const MatType& mat)
    {
        compute(mat);
    }

    template <class MatType>
    AbsDiagonalPreconditioner& analyzePattern(const MatType&)
    {
        return *this;
    }
    template <class MatType>
    AbsDiagonalPreconditioner& factorize(const MatType& mat)
    {
        return compute(mat);
    }
    template <class MatType>
    AbsDiagonalPreconditioner& compute(const MatType& mat)
    {
        inv_ = VecX::Ones(mat.cols());
        for (int k = 0; k < mat.outerSize(); ++k) {
            for (typename MatType::InnerIterator it(mat, k); it; ++it) {
                if (it.row() == it.col() && std::abs(it.value()) > 0.0) {
                    inv_[it.row()] = 1.0 / std::abs(it.value());
                }
            }
        }
        return *this;
    }

    template <class Rhs>
    VecX solve(const Rhs& b) const
    {
        return inv_.cwiseProduct(b);
    }

    [[nodiscard]] Eigen::ComputationInfo info() const { return Eigen::Success; }

private:
    VecX inv_;
};

double relative_residual(const SparseMatrix& a, const VecX& x, const VecX& b, double bnorm)
{
    return (a * x - b).norm() / bnorm;
}

} // namespace

SparseMatrix append_constraint(const SparseMatrix& a, const VecX& m)
{
    if (a.rows() != a.cols() || m.size() != a.rows()) {
        throw DegenerateInput("append_constraint: size mismatch");
    }
    const auto n = a.rows();
    std::vector<Eigen::Triplet<double>> t;
    t.reserve(static_cast<std::size_t>(a.nonZeros() + 2 * n));
    for (int k = 0; k < a.outerSize(); ++k) {
        for (SparseMatrix::InnerIterator it(a, k); it; ++it) {
            t.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()), it.value());
        }
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        if (m[i] != 0.0) {
            t.emplace_back(static_cast<int>(i), static_cast<int>(n), m[i]);
            t.emplace_back(static_cast<int>(n), static_cast<int>(i), m[i]);
        }
    }
    SparseMatrix out(n + 1, n + 1);
    out.setFromTriplets(t.begin(), t.end());
    out.makeCompressed();
    return out;
}

SparseMatrix block_matrix(const std::vector<std::vector<const SparseMatrix*>>& blocks,
                          const std::vector<long>& row_sizes, const std::vector<long>& col_sizes)
{
    long nr = 0;
    long nc = 0;
    std::vector<long> roff;
    std::vector<long> coff;
    for (long s : row_sizes) {
        roff.push_back(nr);
        nr += s;
    }
    for (long s : col_sizes) {
        coff.push_back(nc);
        nc += s;
    }
    std::vector<Eigen::Triplet<double>> t;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        for (std::size_t j = 0; j < blocks[i].size(); ++j) {
            const SparseMatrix* b = blocks[i][j];
            if (b == nullptr) {
                continue;
            }
            if (b->rows() != row_sizes[i] || b->cols() != col_sizes[j]) {
                throw DegenerateInput("block_matrix: block size mismatch");
            }
            for (int k = 0; k < b->outerSize(); ++k) {
                for (SparseMatrix::InnerIterator it(*b, k); it; ++it) {
                    t.emplace_back(static_cast<int>(roff[i] + it.row()), static_cast<int>(coff[j] + it.col()),
                                   it.value());
                }
            }
        }
    }
    SparseMatrix out(nr, nc);
    out.setFromTriplets(t.begin(), t.end());
    out.makeCompressed();
    return out;
}

struct LinearSolver::Impl {
    SparseMatrix matrix;
    SolverOptions options;
    Eigen::UmfPackLU<SparseMatrix> lu;
};

LinearSolver::LinearSolver(const SparseMatrix& matrix, SolverOptions options) : impl_(std::make_unique<Impl>())
{
    if (matrix.rows() != matrix.cols()) {
        throw DegenerateInput("linear system must be square");
    }
    impl_->matrix = matrix;
    impl_->matrix.makeCompressed();
    impl_->options = options;
    if (options.kind == SolverKind::direct) {
        // All systems here are symmetric. The unsymmetric ordering fills in badly on
        // the dense mean-constraint row, and the default diagonal threshold rejects
        // the small mass-block pivots of the coupled stream-function system.
        // Iterative refinement below guards the accuracy.
        impl_->lu.umfpackControl()(UMFPACK_STRATEGY) = UMFPACK_STRATEGY_SYMMETRIC;
        impl_->lu.umfpackControl()(UMFPACK_SYM_PIVOT_TOLERANCE) = 1e-8;
        impl_->lu.compute(impl_->matrix);
        if (impl_->lu.info() != Eigen::Success) {
            throw SingularSystem("sparse LU factorisation failed");
        }
    }
}

LinearSolver::~LinearSolver() = default;

LinearSolution LinearSolver::solve(const VecX& rhs) const
{
    const SparseMatrix& a = impl_->matrix;
    if (rhs.size() != a.rows()) {
        throw DegenerateInput("right-hand side size mismatch");
    }
    LinearSolution out;
    out.diagnostics.unknowns = static_cast<long>(a.rows());
    out.diagnostics.nonzeros = static_cast<long>(a.nonZeros());
    const double bnorm = rhs.norm();
    if (bnorm == 0.0) {
        out.x = VecX::Zero(a.rows());
        out.diagnostics.method = impl_->options.kind == SolverKind::direct ? "umfpack-lu" : "minres";
        return out;
    }
    const double tol = impl_->options.tol;
    if (impl_->options.kind == SolverKind::direct) {
        out.diagnostics.method = "umfpack-lu";
        out.x = impl_->lu.solve(rhs);
        if (impl_->lu.info() != Eigen::Success || !out.x.allFinite()) {
            throw SingularSystem("sparse LU solve failed");
        }
        double res = relative_residual(a, out.x, rhs, bnorm);
        // Refine towards a margin below the contract; stop once progress stalls.
        for (int step = 0; step < 8 && res > 1e-2 * tol; ++step) {
            const VecX r = rhs - a * out.x;
            const VecX x1 = out.x + impl_->lu.solve(r);
            const double r1 = relative_residual(a, x1, rhs, bnorm);
            if (!(r1 < res)) {
                break;
            }
            out.x = x1;
            res = r1;
            ++out.diagnostics.refinement_steps;
        }
        out.diagnostics.relative_residual = res;
    } else {
        out.diagnostics.method = "minres";
        Eigen::MINRES<SparseMatrix, Eigen::Lower | Eigen::Upper, AbsDiagonalPreconditioner> mr;
        mr.setTolerance(1e-2 * tol);
        mr.setMaxIterations(static_cast<Eigen::Index>(20 * a.rows() + 1000));
        mr.compute(a);
        out.x = mr.solve(rhs);
        out.diagnostics.refinement_steps = static_cast<int>(mr.iterations());
        out.diagnostics.relative_residual = relative_residual(a, out.x, rhs, bnorm);
    }
    if (!(out.diagnostics.relative_residual <= tol)) {
        std::ostringstream os;
        os << "relative residual " << out.diagnostics.relative_residual << " exceeds " << tol;
        throw ResidualTooLarge(os.str());
    }
    return out;
}

LinearSolution solve(const ConstrainedSystem& system, const SolverOptions& options)
{
    const LinearSolver solver(system.matrix, options);
    return solver.solve(system.rhs);
}

} // namespace surfstokes
