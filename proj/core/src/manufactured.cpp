#include "surfstokes/manufactured.hpp"

namespace surfstokes {

namespace {

const auto kPsi = [](const auto& x) { return ManufacturedCase::psi(x); };
const auto kPressure = [](const auto& x) { return ManufacturedCase::pressure(x); };

} // namespace

Vec3 ManufacturedCase::exact_u(const Vec3& x) const { return stream_velocity(field_, kPsi, x); }

Mat3 ManufacturedCase::exact_grad_u(const Vec3& x) const { return stream_velocity_gradient(field_, kPsi, x); }

Vec3 ManufacturedCase::exact_grad_p(const Vec3& x) const
{
    const auto g = jet::grad(pressure(seed<1>(x)));
    return jet::value(g);
}

Vec3 ManufacturedCase::forcing_f(const Vec3& x) const { return stokes_forcing(field_, kPsi, kPressure, x); }

} // namespace surfstokes
