#pragma once

// Truncated multivariate Taylor polynomials in three variables.
//
// A TaylorJet<N> stores the Taylor coefficients f^(a)(x0) / a! of a scalar
// field for every multi-index |a| <= N. Arithmetic is truncated at degree N,
// and differentiation maps a TaylorJet<N> to a TaylorJet<N-1>, so nested
// differential operators can be composed exactly at a point.

#include <array>
#include <cmath>
#include <cstddef>

namespace surfstokes {

namespace detail {

constexpr std::size_t jet_size(int order)
{
    return order < 0 ? 0
                     : static_cast<std::size_t>((order + 1) * (order + 2) * (order + 3) / 6);
}

using Exponents = std::array<int, 3>;

// Monomials ordered by total degree, then by descending x then y exponent.
template <int N>
constexpr auto make_monomials()
{
    std::array<Exponents, jet_size(N)> out{};
    std::size_t k = 0;
    for (int deg = 0; deg <= N; ++deg) {
        for (int a = deg; a >= 0; --a) {
            for (int b = deg - a; b >= 0; --b) {
                out[k++] = {a, b, deg - a - b};
            }
        }
    }
    return out;
}

constexpr std::size_t monomial_index(int a, int b, int c)
{
    const int deg = a + b + c;
    std::size_t idx = jet_size(deg - 1);
    for (int ap = deg; ap > a; --ap) {
        idx += static_cast<std::size_t>(deg - ap + 1);
    }
    return idx + static_cast<std::size_t>(deg - a - b);
}

struct ProductEntry {
    std::size_t lhs;
    std::size_t rhs;
    std::size_t out;
};

template <int N>
constexpr std::size_t count_products()
{
    constexpr auto mono = make_monomials<N>();
    std::size_t n = 0;
    for (std::size_t i = 0; i < mono.size(); ++i) {
        for (std::size_t j = 0; j < mono.size(); ++j) {
            const int deg = mono[i][0] + mono[i][1] + mono[i][2] + mono[j][0] + mono[j][1] + mono[j][2];
            if (deg <= N) {
                ++n;
            }
        }
    }
    return n;
}

template <int N>
constexpr auto make_products()
{
    constexpr auto mono = make_monomials<N>();
    std::array<ProductEntry, count_products<N>()> out{};
    std::size_t n = 0;
    for (std::size_t i = 0; i < mono.size(); ++i) {
        for (std::size_t j = 0; j < mono.size(); ++j) {
            const int a = mono[i][0] + mono[j][0];
            const int b = mono[i][1] + mono[j][1];
            const int c = mono[i][2] + mono[j][2];
            if (a + b + c <= N) {
                out[n++] = {i, j, monomial_index(a, b, c)};
            }
        }
    }
    return out;
}

template <int N>
struct JetTables {
    static constexpr auto monomials = make_monomials<N>();
    static constexpr auto products = make_products<N>();
};

constexpr double factorial(int n)
{
    double r = 1.0;
    for (int i = 2; i <= n; ++i) {
        r *= i;
    }
    return r;
}

} // namespace detail

template <int N>
class TaylorJet {
    static_assert(N >= 0 && N <= 4, "TaylorJet supports orders 0..4");

public:
    static constexpr int kOrder = N;
    static constexpr std::size_t kSize = detail::jet_size(N);

    constexpr TaylorJet() = default;
    constexpr TaylorJet(double constant) { c_[0] = constant; } // NOLINT(google-explicit-constructor)

    /// The coordinate function x_axis expanded around x0.
    static TaylorJet variable(double x0, int axis)
    {
        TaylorJet j(x0);
        if constexpr (N >= 1) {
            j.c_[1 + static_cast<std::size_t>(axis)] = 1.0;
        }
        return j;
    }

    [[nodiscard]] double value() const { return c_[0]; }
    [[nodiscard]] double coeff(std::size_t i) const { return c_[i]; }
    double& coeff(std::size_t i) { return c_[i]; }

    [[nodiscard]] double coeff(int a, int b, int c) const { return c_[detail::monomial_index(a, b, c)]; }

    /// Partial derivative d^(a+b+c) / dx^a dy^b dz^c at the expansion point.
    [[nodiscard]] double derivative(int a, int b, int c) const
    {
        return coeff(a, b, c) * detail::factorial(a) * detail::factorial(b) * detail::factorial(c);
    }

    TaylorJet& operator+=(const TaylorJet& o)
    {
        for (std::size_t i = 0; i < kSize; ++i) {
            c_[i] += o.c_[i];
        }
        return *this;
    }
    TaylorJet& operator-=(const TaylorJet& o)
    {
        for (std::size_t i = 0; i < kSize; ++i) {
            c_[i] -= o.c_[i];
        }
        return *this;
    }
    TaylorJet& operator*=(double s)
    {
        for (auto& v : c_) {
            v *= s;
        }
        return *this;
    }
    TaylorJet& operator*=(const TaylorJet& o)
    {
        *this = *this * o;
        return *this;
    }

    friend TaylorJet operator+(TaylorJet a, const TaylorJet& b) { return a += b; }
    friend TaylorJet operator-(TaylorJet a, const TaylorJet& b) { return a -= b; }
    friend TaylorJet operator-(TaylorJet a)
    {
        for (auto& v : a.c_) {
            v = -v;
        }
        return a;
    }
    friend TaylorJet operator*(TaylorJet a, double s) { return a *= s; }
    friend TaylorJet operator*(double s, TaylorJet a) { return a *= s; }
    friend TaylorJet operator+(TaylorJet a, double s)
    {
        a.c_[0] += s;
        return a;
    }
    friend TaylorJet operator+(double s, TaylorJet a) { return a + s; }
    friend TaylorJet operator-(TaylorJet a, double s)
    {
        a.c_[0] -= s;
        return a;
    }
    friend TaylorJet operator-(double s, TaylorJet a) { return -a + s; }
    friend TaylorJet operator/(TaylorJet a, double s) { return a *= (1.0 / s); }

    friend TaylorJet operator*(const TaylorJet& a, const TaylorJet& b)
    {
        TaylorJet r;
        for (const auto& e : detail::JetTables<N>::products) {
            r.c_[e.out] += a.c_[e.lhs] * b.c_[e.rhs];
        }
        return r;
    }

    friend TaylorJet operator/(const TaylorJet& a, const TaylorJet& b) { return a * pow(b, -1.0); }
    friend TaylorJet operator/(double s, const TaylorJet& b) { return s * pow(b, -1.0); }

    /// Applies a univariate function given its scaled derivatives g^(m)(a0)/m!.
    friend TaylorJet compose(const TaylorJet& a, const std::array<double, N + 1>& scaled)
    {
        TaylorJet delta = a;
        delta.c_[0] = 0.0;
        TaylorJet r(scaled[N]);
        for (int m = N - 1; m >= 0; --m) {
            r = r * delta + scaled[static_cast<std::size_t>(m)];
        }
        return r;
    }

    /// a^p for real p via the binomial series; requires a.value() > 0 unless p is a
    /// non-negative integer.
    friend TaylorJet pow(const TaylorJet& a, double p)
    {
        std::array<double, N + 1> g{};
        const double a0 = a.value();
        double binom = 1.0;
        for (int m = 0; m <= N; ++m) {
            g[static_cast<std::size_t>(m)] = binom * std::pow(a0, p - m);
            binom *= (p - m) / (m + 1);
        }
        return compose(a, g);
    }

    friend TaylorJet sqrt(const TaylorJet& a) { return pow(a, 0.5); }

private:
    std::array<double, kSize> c_{};
};

/// Drops all terms above degree M.
template <int M, int N>
TaylorJet<M> truncate(const TaylorJet<N>& a)
{
    static_assert(M <= N);
    TaylorJet<M> r;
    for (std::size_t i = 0; i < TaylorJet<M>::kSize; ++i) {
        r.coeff(i) = a.coeff(i);
    }
    return r;
}

/// Partial derivative along `axis`, one order lower.
template <int N>
TaylorJet<N - 1> diff(const TaylorJet<N>& a, int axis)
{
    static_assert(N >= 1);
    TaylorJet<N - 1> r;
    for (std::size_t i = 0; i < TaylorJet<N - 1>::kSize; ++i) {
        auto e = detail::JetTables<N - 1>::monomials[i];
        const int k = ++e[static_cast<std::size_t>(axis)];
        r.coeff(i) = k * a.coeff(e[0], e[1], e[2]);
    }
    return r;
}

template <int N>
using JetVec = std::array<TaylorJet<N>, 3>;

template <int N>
using JetMat = std::array<std::array<TaylorJet<N>, 3>, 3>;

/// Seeds the three coordinate functions at x0.
template <int N, class Point>
JetVec<N> seed(const Point& x0)
{
    return {TaylorJet<N>::variable(x0[0], 0), TaylorJet<N>::variable(x0[1], 1),
            TaylorJet<N>::variable(x0[2], 2)};
}

} // namespace surfstokes
