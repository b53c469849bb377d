#include "surfstokes/complexity.hpp"

#include "surfstokes/errors.hpp"

namespace surfstokes {

Method parse_method(const std::string& s)
{
    if (s == "tracefem") {
        return Method::tracefem;
    }
    if (s == "sfem") {
        return Method::sfem;
    }
    throw ConfigError("unknown method '" + s + "' (expected tracefem or sfem)");
}

Formulation parse_formulation(const std::string& s)
{
    if (s == "th") {
        return Formulation::th;
    }
    if (s == "sf") {
        return Formulation::sf;
    }
    if (s == "sf_total") {
        return Formulation::sf_total;
    }
    throw ConfigError("unknown formulation '" + s + "' (expected th, sf or sf_total)");
}

std::string to_string(Method m) { return m == Method::tracefem ? "tracefem" : "sfem"; }

std::string to_string(Formulation f)
{
    switch (f) {
    case Formulation::th:
        return "th";
    case Formulation::sf:
        return "sf";
    case Formulation::sf_total:
        return "sf_total";
    }
    return "";
}

namespace {

void check_order(Formulation f, int k)
{
    if (f == Formulation::th ? k < 2 : k < 1) {
        throw InvalidOrder("order " + std::to_string(k) + " is not valid for " + to_string(f));
    }
}

long long ceil_div(long long a, long long b) { return (a + b - 1) / b; }

} // namespace

long long dofs_formula(Method method, Formulation formulation, long long n, int k)
{
    check_order(formulation, k);
    if (n < 1) {
        throw DegenerateInput("element count must be positive");
    }
    const long long kk = k;
    if (method == Method::sfem) {
        const long long c = ceil_div(n, 2);
        const long long th = 3 * c * kk * kk + c * (kk - 1) * (kk - 1);
        const long long sf = 2 * c * (kk + 1) * (kk + 1);
        switch (formulation) {
        case Formulation::th:
            return th;
        case Formulation::sf:
            return sf;
        case Formulation::sf_total:
            return sf + 4 * c * kk * kk;
        }
    } else {
        const long long c = ceil_div(n, 6);
        const long long th = 3 * c * (kk + 1) * kk * kk + c * kk * (kk - 1) * (kk - 1);
        const long long sf = 2 * c * (kk + 2) * (kk + 1) * (kk + 1);
        switch (formulation) {
        case Formulation::th:
            return th;
        case Formulation::sf:
            return sf;
        case Formulation::sf_total:
            return sf + 4 * c * (kk + 1) * kk * kk;
        }
    }
    return 0;
}

long long scalar_dim_closed(long long F, int m)
{
    if (F < 4 || F % 2 != 0) {
        throw InvalidMesh("a closed genus-0 triangulation has an even number F >= 4 of triangles");
    }
    if (m < 1) {
        throw InvalidOrder("Lagrange order must be at least 1");
    }
    const long long V = 2 + F / 2;
    const long long E = 3 * F / 2;
    const long long mm = m;
    return V + (mm - 1) * E + (mm - 1) * (mm - 2) / 2 * F;
}

long long exact_counts(long long F, int k, Formulation formulation)
{
    check_order(formulation, k);
    switch (formulation) {
    case Formulation::th:
        return 3 * scalar_dim_closed(F, k) + scalar_dim_closed(F, k - 1);
    case Formulation::sf:
        return 2 * scalar_dim_closed(F, k + 1);
    case Formulation::sf_total:
        return 2 * scalar_dim_closed(F, k + 1) + 4 * scalar_dim_closed(F, k);
    }
    return 0;
}

DofReport sfem_report(long long F, int k)
{
    DofReport r;
    r.n = F;
    r.k = k;
    r.th_formula = dofs_formula(Method::sfem, Formulation::th, F, k);
    r.sf_formula = dofs_formula(Method::sfem, Formulation::sf, F, k);
    r.sf_total_formula = dofs_formula(Method::sfem, Formulation::sf_total, F, k);
    r.exact_th = exact_counts(F, k, Formulation::th);
    r.exact_sf = exact_counts(F, k, Formulation::sf);
    return r;
}

} // namespace surfstokes
