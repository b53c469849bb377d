#pragma once

// Surface differential operators applied to fields defined in a neighbourhood
// of the surface. Every operator uses the extended normal n(x) = grad(phi)/|grad(phi)|
// at the evaluation point, so results are meaningful off the surface too.
//
// Fields are generic callables taking a JetVec<M> of seeded coordinates and
// returning a TaylorJet<M> (scalar), JetVec<M> (vector) or JetMat<M> (tensor).

#include "surfstokes/errors.hpp"
#include "surfstokes/levelset.hpp"
#include "surfstokes/taylor_jet.hpp"
#include "surfstokes/types.hpp"

namespace surfstokes {

namespace jet {

template <int M, int N>
JetVec<M> truncate_vec(const JetVec<N>& v)
{
    return {truncate<M>(v[0]), truncate<M>(v[1]), truncate<M>(v[2])};
}

template <int N>
JetVec<N - 1> grad(const TaylorJet<N>& f)
{
    return {diff(f, 0), diff(f, 1), diff(f, 2)};
}

/// (grad v)_{ij} = d v_i / d x_j
template <int N>
JetMat<N - 1> grad(const JetVec<N>& v)
{
    JetMat<N - 1> g;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            g[i][j] = diff(v[i], j);
        }
    }
    return g;
}

template <int N>
TaylorJet<N> dot(const JetVec<N>& a, const JetVec<N>& b)
{
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

template <int N>
JetVec<N> cross(const JetVec<N>& a, const JetVec<N>& b)
{
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

template <int N>
JetMat<N> matmul(const JetMat<N>& a, const JetMat<N>& b)
{
    JetMat<N> r;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j];
        }
    }
    return r;
}

template <int N>
JetVec<N> matvec(const JetMat<N>& a, const JetVec<N>& v)
{
    JetVec<N> r;
    for (int i = 0; i < 3; ++i) {
        r[i] = a[i][0] * v[0] + a[i][1] * v[1] + a[i][2] * v[2];
    }
    return r;
}

template <int N>
Vec3 value(const JetVec<N>& v)
{
    return {v[0].value(), v[1].value(), v[2].value()};
}

template <int N>
Mat3 value(const JetMat<N>& a)
{
    Mat3 m;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            m(i, j) = a[i][j].value();
        }
    }
    return m;
}

} // namespace jet

/// Extended normal, projector and surface operators around one point.
/// N is the order of the level-set expansion; the normal is known to order N-1,
/// so operators accept fields of order M <= N and return order M-1.
template <int N>
class SurfaceJets {
    static_assert(N >= 1);

public:
    SurfaceJets(const LevelSetField& field, const Vec3& x) : x_(x)
    {
        const auto g = jet::grad(field.taylor<N>(x));
        const auto g2 = jet::dot(g, g);
        if (g2.value() < 1e-24) {
            throw DegenerateGradient("level-set gradient vanishes at the evaluation point");
        }
        const auto inv = pow(g2, -0.5);
        for (int i = 0; i < 3; ++i) {
            n_[i] = g[i] * inv;
        }
    }

    template <int M>
    [[nodiscard]] JetVec<M> position() const
    {
        return seed<M>(x_);
    }

    template <int M>
    [[nodiscard]] JetVec<M> normal() const
    {
        return jet::truncate_vec<M>(n_);
    }

    template <int M>
    [[nodiscard]] JetMat<M> projector() const
    {
        const auto n = normal<M>();
        JetMat<M> p;
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                p[i][j] = (i == j ? 1.0 : 0.0) - n[i] * n[j];
            }
        }
        return p;
    }

    /// P grad f
    template <int M>
    [[nodiscard]] JetVec<M - 1> surface_gradient(const TaylorJet<M>& f) const
    {
        return jet::matvec(projector<M - 1>(), jet::grad(f));
    }

    /// P (grad v) P
    template <int M>
    [[nodiscard]] JetMat<M - 1> surface_gradient(const JetVec<M>& v) const
    {
        const auto p = projector<M - 1>();
        return jet::matmul(jet::matmul(p, jet::grad(v)), p);
    }

    /// Symmetric part of the surface gradient of v.
    template <int M>
    [[nodiscard]] JetMat<M - 1> deformation(const JetVec<M>& v) const
    {
        const auto g = surface_gradient(v);
        JetMat<M - 1> e;
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                e[i][j] = 0.5 * (g[i][j] + g[j][i]);
            }
        }
        return e;
    }

    /// tr(P grad v)
    template <int M>
    [[nodiscard]] TaylorJet<M - 1> divergence(const JetVec<M>& v) const
    {
        const auto p = projector<M - 1>();
        const auto g = jet::grad(v);
        TaylorJet<M - 1> r;
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                r += p[j][i] * g[i][j];
            }
        }
        return r;
    }

    /// Row-wise divergence: (div A)_i = div(row i of A).
    template <int M>
    [[nodiscard]] JetVec<M - 1> divergence(const JetMat<M>& a) const
    {
        JetVec<M - 1> r;
        for (int i = 0; i < 3; ++i) {
            r[i] = divergence(JetVec<M>{a[i][0], a[i][1], a[i][2]});
        }
        return r;
    }

    /// n x grad_s f
    template <int M>
    [[nodiscard]] JetVec<M - 1> curl(const TaylorJet<M>& f) const
    {
        return jet::cross(normal<M - 1>(), surface_gradient(f));
    }

    /// div_s(v x n)
    template <int M>
    [[nodiscard]] TaylorJet<M - 1> curl(const JetVec<M>& v) const
    {
        return divergence(jet::cross(v, normal<M>()));
    }

private:
    Vec3 x_;
    JetVec<N - 1> n_;
};

// Point evaluators for callables of the form `auto f(const JetVec<M>&)`.

template <class F>
Vec3 surface_gradient_scalar(const LevelSetField& field, F&& f, const Vec3& x)
{
    const SurfaceJets<2> s(field, x);
    return jet::value(s.surface_gradient(f(s.position<1>())));
}

template <class F>
Mat3 surface_gradient_vector(const LevelSetField& field, F&& v, const Vec3& x)
{
    const SurfaceJets<2> s(field, x);
    return jet::value(s.surface_gradient(v(s.position<1>())));
}

template <class F>
Mat3 surface_deformation(const LevelSetField& field, F&& v, const Vec3& x)
{
    const SurfaceJets<2> s(field, x);
    return jet::value(s.deformation(v(s.position<1>())));
}

template <class F>
double surface_divergence(const LevelSetField& field, F&& v, const Vec3& x)
{
    const SurfaceJets<2> s(field, x);
    return s.divergence(v(s.position<1>())).value();
}

template <class F>
Vec3 surface_divergence_tensor(const LevelSetField& field, F&& a, const Vec3& x)
{
    const SurfaceJets<2> s(field, x);
    return jet::value(s.divergence(a(s.position<1>())));
}

template <class F>
Vec3 surface_curl_scalar(const LevelSetField& field, F&& f, const Vec3& x)
{
    const SurfaceJets<2> s(field, x);
    return jet::value(s.curl(f(s.position<1>())));
}

template <class F>
double surface_curl_vector(const LevelSetField& field, F&& v, const Vec3& x)
{
    const SurfaceJets<2> s(field, x);
    return s.curl(v(s.position<1>())).value();
}

} // namespace surfstokes
