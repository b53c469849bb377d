#pragma once

// Sparse solves for saddle-point and mean-constrained systems.

#include "surfstokes/assembly.hpp"

#include <memory>
#include <string>

namespace surfstokes {

enum class SolverKind { direct, minres };

struct SolverOptions {
    SolverKind kind = SolverKind::direct;
    double tol = 1e-10; ///< bound on ||A x - b|| / ||b||
};

struct SolveDiagnostics {
    double relative_residual = 0.0; ///< recomputed from the assembled matrix
    double constraint_residual = 0.0; ///< |m^T x| for the mean constraint, when present
    int refinement_steps = 0; ///< iterative refinement sweeps (direct) or iterations (minres)
    long unknowns = 0;
    long nonzeros = 0;
    std::string method;
};

/// Square system, already augmented with any multiplier rows.
struct ConstrainedSystem {
    SparseMatrix matrix;
    VecX rhs;
    bool symmetric = true;
};

struct LinearSolution {
    VecX x;
    SolveDiagnostics diagnostics;
};

/// Appends the row and column m (and a zero diagonal) to a square matrix:
/// [A m; m^T 0].
[[nodiscard]] SparseMatrix append_constraint(const SparseMatrix& a, const VecX& m);

/// Stacks sparse blocks; null entries are zero blocks of the implied size.
[[nodiscard]] SparseMatrix block_matrix(const std::vector<std::vector<const SparseMatrix*>>& blocks,
                                        const std::vector<long>& row_sizes, const std::vector<long>& col_sizes);

/// Factorisation that can be reused for several right-hand sides.
class LinearSolver {
public:
    LinearSolver(const SparseMatrix& matrix, SolverOptions options = {});
    ~LinearSolver();
    LinearSolver(const LinearSolver&) = delete;
    LinearSolver& operator=(const LinearSolver&) = delete;

    /// Throws ResidualTooLarge if the recomputed residual exceeds options.tol.
    [[nodiscard]] LinearSolution solve(const VecX& rhs) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Factorises and solves; SingularSystem on breakdown, ResidualTooLarge past tol.
[[nodiscard]] LinearSolution solve(const ConstrainedSystem& system, const SolverOptions& options = {});

} // namespace surfstokes
