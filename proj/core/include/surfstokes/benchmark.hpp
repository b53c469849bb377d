#pragma once

// Rotating-flow benchmark on the biconcave family: a forcing band around the
// rim drives a vortex on each face; the vortex is located and its distance to
// the face centre reported.

#include "surfstokes/stokes.hpp"

#include <string>

namespace surfstokes {

enum class StokesFormulation { th, sf };

[[nodiscard]] StokesFormulation parse_stokes_formulation(const std::string& s);
[[nodiscard]] std::string to_string(StokesFormulation f);

/// Shape parameter at which the face centre has zero mean and Gaussian curvature.
[[nodiscard]] double d_zero_curvature(double c);
/// Parses "0", "d0", "0.8", "0.96" or any non-negative number.
[[nodiscard]] double parse_d(const std::string& s, double c);

struct BenchmarkConfig {
    double c = 0.95;
    double d = 0.96;
    double ring_radius = 1.1;
    double eps = 0.2;
    StokesFormulation formulation = StokesFormulation::sf;
    int k = 3;
    int level = 3;
    int base_level = kDefaultBaseLevel;
    bool smooth = false;
    StokesOptions options;

    [[nodiscard]] LevelSetField field() const { return LevelSetField::biconcave(c, d); }
    /// Centre of the x > 0 face, (sqrt(c^(4/3) - d^2), 0, 0).
    [[nodiscard]] Vec3 face_centre() const;
};

/// The four shape parameters of the reference study.
[[nodiscard]] std::array<double, 4> canonical_d_values(double c = 0.95);

struct VortexResult {
    Vec3 position = Vec3::Zero(); ///< on the exact surface, x > 0
    Vec3 centre = Vec3::Zero();
    double distance = 0.0;
    double h = 0.0;
    double value = 0.0; ///< psi_h (sf) or |u_h| (th) at the vortex
};

/// Smoothed bump 36 s^2 (1 - s)^2 with s = (1 - tanh(3 r / eps)) / 2.
[[nodiscard]] double bump(double r, double eps);

[[nodiscard]] Vec3 benchmark_forcing(const BenchmarkConfig& cfg, const Vec3& x);

/// Extremum search on the x > 0 half of the surface: lattice pass then damped
/// Newton in reference coordinates. For sf the maximum of psi_h, for th the
/// minimum of |u_h|.
[[nodiscard]] VortexResult locate_vortex(const StreamFunctionSolution& s, const Vec3& centre);
[[nodiscard]] VortexResult locate_vortex(const TaylorHoodSolution& s, const Vec3& centre);

[[nodiscard]] VortexResult run_benchmark(const BenchmarkConfig& cfg);

[[nodiscard]] std::string benchmark_csv_header();
[[nodiscard]] std::string benchmark_csv_row(const BenchmarkConfig& cfg, const VortexResult& r);

} // namespace surfstokes
