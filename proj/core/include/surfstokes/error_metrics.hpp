#pragma once

// Error norms on the discrete surface and convergence orders.

#include "surfstokes/manufactured.hpp"
#include "surfstokes/stokes.hpp"

#include <array>
#include <string>

namespace surfstokes {

struct ErrorRecord {
    double h = 0.0;
    double l2_u = 0.0;
    double h1semi_u = 0.0;
    double l2_p = 0.0;
    double h1semi_p = 0.0;
    double l2_un = 0.0; ///< ||u_h . n~||
    double l2_div = 0.0; ///< ||div_h u_h||
    long dofs = 0;
    long elements = 0;
};

/// Exact velocity and pressure evaluated at points of the discrete surface.
struct ExactFields {
    std::function<Vec3(const Vec3&)> u;
    std::function<Mat3(const Vec3&)> grad_u; ///< full extended gradient d u_i / d x_j
    std::function<double(const Vec3&)> p;
    std::function<Vec3(const Vec3&)> grad_p;
};

[[nodiscard]] ExactFields exact_fields(const ManufacturedCase& c);

/// Discrete velocity and pressure on one surface.
struct DiscreteFields {
    const VectorSpace* velocity_space;
    const VecX* u;
    const ScalarSpace* pressure_space;
    const VecX* p;
    long dofs;
};

[[nodiscard]] DiscreteFields discrete_fields(const TaylorHoodSolution& s);
[[nodiscard]] DiscreteFields discrete_fields(const StreamFunctionSolution& s);

/// All norms by quadrature of the given degree (>= 2k + 3 by default).
/// Pressures are compared after subtracting their means over the discrete surface.
[[nodiscard]] ErrorRecord compute_errors(const DiscreteFields& sol, const ExactFields& exact,
                                         std::optional<int> quadrature_degree = std::nullopt);

inline constexpr std::array<const char*, 6> kNormNames = {"l2_u", "h1semi_u", "l2_p", "h1semi_p", "l2_un", "l2_div"};

[[nodiscard]] double norm_value(const ErrorRecord& r, std::size_t which);

struct EocSeries {
    std::vector<double> per_interval; ///< log(e_i / e_{i+1}) / log(h_i / h_{i+1})
    double regression = 0.0; ///< least-squares slope of log e against log h over the last three points
};

/// Orders for one error sequence. DegenerateInput for fewer than two points,
/// a zero error or a repeated h.
[[nodiscard]] EocSeries eoc(const std::vector<double>& h, const std::vector<double>& e);

/// Orders for all six norms of a record sequence.
[[nodiscard]] std::array<EocSeries, 6> eoc(const std::vector<ErrorRecord>& records);

[[nodiscard]] std::string csv_header();
[[nodiscard]] std::string csv_row(const ErrorRecord& r);
[[nodiscard]] std::string to_csv(const std::vector<ErrorRecord>& records);

} // namespace surfstokes
