#pragma once

// Bilinear forms and load vectors on the curved surface.

#include "surfstokes/fe_space.hpp"

#include <Eigen/Sparse>

#include <functional>
#include <map>
#include <optional>

namespace surfstokes {

using SparseMatrix = Eigen::SparseMatrix<double>;
using VectorField = std::function<Vec3(const Vec3&)>;

/// Largest entry of |A - A^T|.
[[nodiscard]] double symmetry_error(const SparseMatrix& a);

/// Worker count for assembly loops: hardware concurrency capped by SURFSTOKES_THREADS.
[[nodiscard]] int worker_count();

/// Runs fn(begin, end) over contiguous blocks of [0, count) on worker_count() threads.
void parallel_blocks(std::size_t count, const std::function<void(std::size_t, std::size_t)>& fn);

/// Reference tables of an order-m basis at the quadrature points.
struct BasisTable {
    std::vector<VecX> values;
    std::vector<Eigen::MatrixX2d> gradients;
};

/// Surface, quadrature rule, penalty parameter and cached geometry at every
/// quadrature point. The surface must outlive the context.
class AssemblyContext {
public:
    AssemblyContext(const CurvedSurface& surface, int quadrature_degree,
                    std::optional<double> eta_override = std::nullopt);

    [[nodiscard]] const CurvedSurface& surface() const noexcept { return *surface_; }
    [[nodiscard]] const QuadratureRule& rule() const noexcept { return rule_; }
    [[nodiscard]] double eta() const noexcept { return eta_; }
    [[nodiscard]] std::size_t num_points() const noexcept { return rule_.size(); }

    [[nodiscard]] const QuadPointGeometry& geometry(std::size_t t, std::size_t q) const
    {
        return geometry_[t * rule_.size() + q];
    }
    /// Quadrature weight including the surface measure.
    [[nodiscard]] double weight(std::size_t t, std::size_t q) const
    {
        return rule_.weights[q] * geometry(t, q).measure;
    }

    /// Tabulated basis of the given order (built on first use; not thread-safe
    /// on first call, so call it before entering parallel regions).
    [[nodiscard]] const BasisTable& table(int order) const;

    /// Surface gradients G grad(theta) of the order-m basis at (t, q), one row per function.
    [[nodiscard]] Eigen::MatrixX3d gradients(const BasisTable& tab, std::size_t t, std::size_t q) const
    {
        return tab.gradients[q] * geometry(t, q).pullback.transpose();
    }

    [[nodiscard]] double area() const;

private:
    const CurvedSurface* surface_;
    QuadratureRule rule_;
    double eta_;
    std::vector<QuadPointGeometry> geometry_;
    mutable std::map<int, BasisTable> tables_;
};

/// Default quadrature degree 2k + 3 for geometry order k.
[[nodiscard]] inline int default_quadrature_degree(int k) { return 2 * k + 3; }

/// a_T(u, v) = int E_T(u) : E_T(v) + P u . P v with E_T(u) = sym(P grad u P) - (u . n) H.
[[nodiscard]] SparseMatrix assemble_a_Th(const AssemblyContext& ctx, const VectorSpace& u);
/// b(u, q) = int u . grad q; rows index Q, columns index U.
[[nodiscard]] SparseMatrix assemble_b(const AssemblyContext& ctx, const VectorSpace& u, const ScalarSpace& q);
/// eta * int (u . n~)(v . n~)
[[nodiscard]] SparseMatrix assemble_penalty(const AssemblyContext& ctx, const VectorSpace& u);
[[nodiscard]] SparseMatrix assemble_mass_scalar(const AssemblyContext& ctx, const ScalarSpace& s);
[[nodiscard]] SparseMatrix assemble_mass_vector(const AssemblyContext& ctx, const VectorSpace& u);
/// int grad a . grad b
[[nodiscard]] SparseMatrix assemble_stiffness(const AssemblyContext& ctx, const ScalarSpace& s);
/// 2 int (1 - K~) grad a . grad b
[[nodiscard]] SparseMatrix assemble_stiffness_K(const AssemblyContext& ctx, const ScalarSpace& s);

/// int phi_i (load vector of the constant function 1)
[[nodiscard]] VecX load_constant(const AssemblyContext& ctx, const ScalarSpace& s);
/// int f . v
[[nodiscard]] VecX load_f(const AssemblyContext& ctx, const VectorSpace& u, const VectorField& f);
/// -2 int f . (n~ x grad xi)
[[nodiscard]] VecX load_g(const AssemblyContext& ctx, const ScalarSpace& s, const VectorField& f);
/// int (n~ x grad psi) . v
[[nodiscard]] VecX load_velocity_reconstruction(const AssemblyContext& ctx, const VectorSpace& u,
                                                const ScalarSpace& psi_space, const VecX& psi);
/// int (K~ n~ x grad psi + f) . grad xi
[[nodiscard]] VecX load_pressure_reconstruction(const AssemblyContext& ctx, const ScalarSpace& s,
                                                const ScalarSpace& psi_space, const VecX& psi,
                                                const VectorField& f);

} // namespace surfstokes
