#pragma once

// Manufactured Stokes solution: u = n x grad(psi), pressure p, and the forcing
// f = -P div_s(E_s(u)) + u + P grad(p), all with extended geometry.

#include "surfstokes/extended_ops.hpp"

namespace surfstokes {

/// Forcing of the extended Stokes operator for a stream function psi and a
/// pressure p, both generic callables on JetVec<M>.
template <class Psi, class Pressure>
Vec3 stokes_forcing(const LevelSetField& field, Psi&& psi, Pressure&& p, const Vec3& x)
{
    const SurfaceJets<3> s(field, x);
    const auto u = s.curl(psi(s.position<3>()));
    const auto div_e = jet::value(s.divergence(s.deformation(u)));
    const Mat3 proj = jet::value(s.projector<0>());
    const Vec3 grad_p = jet::value(s.surface_gradient(p(s.position<1>())));
    return -proj * div_e + jet::value(u) + grad_p;
}

template <class Psi>
Vec3 stream_velocity(const LevelSetField& field, Psi&& psi, const Vec3& x)
{
    const SurfaceJets<1> s(field, x);
    return jet::value(s.curl(psi(s.position<1>())));
}

/// d u_i / d x_j of u = n x grad(psi) in the neighbourhood.
template <class Psi>
Mat3 stream_velocity_gradient(const LevelSetField& field, Psi&& psi, const Vec3& x)
{
    const SurfaceJets<2> s(field, x);
    return jet::value(jet::grad(s.curl(psi(s.position<2>()))));
}

class ManufacturedCase {
public:
    explicit ManufacturedCase(LevelSetField field = LevelSetField::biconcave(0.95, 0.96)) : field_(field) {}

    [[nodiscard]] const LevelSetField& field() const noexcept { return field_; }

    /// x^2 y - 5 z^3
    template <class T>
    static T psi(const std::array<T, 3>& x)
    {
        return x[0] * x[0] * x[1] - 5.0 * x[2] * x[2] * x[2];
    }
    /// x^3 + x y z
    template <class T>
    static T pressure(const std::array<T, 3>& x)
    {
        return x[0] * x[0] * x[0] + x[0] * x[1] * x[2];
    }

    [[nodiscard]] double exact_psi(const Vec3& x) const { return psi(std::array<double, 3>{x[0], x[1], x[2]}); }
    [[nodiscard]] double exact_p(const Vec3& x) const { return pressure(std::array<double, 3>{x[0], x[1], x[2]}); }
    [[nodiscard]] Vec3 exact_u(const Vec3& x) const;
    [[nodiscard]] Mat3 exact_grad_u(const Vec3& x) const;
    [[nodiscard]] Vec3 exact_grad_p(const Vec3& x) const;
    [[nodiscard]] Vec3 forcing_f(const Vec3& x) const;

private:
    LevelSetField field_;
};

} // namespace surfstokes
