#pragma once

// Taylor-Hood and stream-function/vorticity discretisations of the surface
// Stokes problem  -P div_s E_s(u) + u + grad_s p = f,  div_s u = 0,  u . n = 0.

#include "surfstokes/linear_solve.hpp"

#include <memory>
#include <optional>

namespace surfstokes {

struct StokesOptions {
    std::optional<int> quadrature_degree; ///< default 2k + 3
    std::optional<double> eta_override;
    SolverOptions solver;
};

/// Velocity of order k and zero-mean pressure of order k-1.
struct TaylorHoodSolution {
    std::shared_ptr<const CurvedSurface> surface;
    VectorSpace velocity_space;
    ScalarSpace pressure_space;
    VecX u;
    VecX p;
    SolveDiagnostics diagnostics;
    double pressure_mean = 0.0; ///< int p_h
    double divergence_residual = 0.0; ///< ||B u_h|| / ||u_h||

    [[nodiscard]] long unknowns() const { return velocity_space.dim() + pressure_space.dim(); }
};

/// Stream function and vorticity of order k+1, reconstructed velocity of order k
/// and zero-mean pressure of order k.
struct StreamFunctionSolution {
    std::shared_ptr<const CurvedSurface> surface;
    ScalarSpace stream_space;
    VecX psi;
    VecX phi;
    VectorSpace velocity_space;
    VecX u;
    ScalarSpace pressure_space;
    VecX p;
    SolveDiagnostics diagnostics; ///< coupled stream/vorticity system
    SolveDiagnostics velocity_diagnostics;
    SolveDiagnostics pressure_diagnostics;
    double stream_mean = 0.0;
    double pressure_mean = 0.0;

    [[nodiscard]] long unknowns() const { return 2L * stream_space.dim(); }
};

/// Geometry order k >= 2 is taken from the surface.
[[nodiscard]] TaylorHoodSolution solve_taylor_hood(std::shared_ptr<const CurvedSurface> surface,
                                                   const VectorField& f, const StokesOptions& options = {});

/// Geometry order k >= 1 is taken from the surface; requires a genus-0 mesh.
[[nodiscard]] StreamFunctionSolution solve_stream_function(std::shared_ptr<const CurvedSurface> surface,
                                                           const VectorField& f,
                                                           const StokesOptions& options = {});

} // namespace surfstokes
