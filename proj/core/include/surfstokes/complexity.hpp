#pragma once

// Degree-of-freedom counts: closed-form estimates for structured planar grids
// and exact counts for closed genus-0 triangulations.

#include <string>

namespace surfstokes {

enum class Method { tracefem, sfem };
enum class Formulation { th, sf, sf_total };

[[nodiscard]] Method parse_method(const std::string& s);
[[nodiscard]] Formulation parse_formulation(const std::string& s);
[[nodiscard]] std::string to_string(Method m);
[[nodiscard]] std::string to_string(Formulation f);

/// Closed-form count for n cut cells (tracefem) or surface triangles (sfem).
/// InvalidOrder for k < 2 (th) or k < 1 (sf, sf_total).
[[nodiscard]] long long dofs_formula(Method method, Formulation formulation, long long n, int k);

/// Dimension of the order-m scalar Lagrange space on a closed genus-0 mesh with F triangles.
[[nodiscard]] long long scalar_dim_closed(long long F, int m);

/// Exact count on a closed genus-0 mesh with F triangles. InvalidMesh if F is odd or below 4.
[[nodiscard]] long long exact_counts(long long F, int k, Formulation formulation);

struct DofReport {
    long long n = 0;
    int k = 0;
    long long th_formula = 0;
    long long sf_formula = 0;
    long long sf_total_formula = 0;
    long long exact_th = 0;
    long long exact_sf = 0;
};

/// SFEM report for a closed mesh with F triangles.
[[nodiscard]] DofReport sfem_report(long long F, int k);

} // namespace surfstokes
