#include "surfstokes/assembly.hpp"

#include "surfstokes/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <mutex>
#include <thread>

namespace surfstokes {

double symmetry_error(const SparseMatrix& a)
{
    const SparseMatrix at = a.transpose();
    const SparseMatrix d = a - at;
    double m = 0.0;
    for (int k = 0; k < d.outerSize(); ++k) {
        for (SparseMatrix::InnerIterator it(d, k); it; ++it) {
            m = std::max(m, std::abs(it.value()));
        }
    }
    return m;
}

int worker_count()
{
    int n = static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
    if (const char* env = std::getenv("SURFSTOKES_THREADS")) {
        const int cap = std::atoi(env);
        if (cap > 0) {
            n = std::min(n, cap);
        }
    }
    return n;
}

void parallel_blocks(std::size_t count, const std::function<void(std::size_t, std::size_t)>& fn)
{
    const auto workers = static_cast<std::size_t>(worker_count());
    if (workers <= 1 || count < 2 * workers) {
        fn(0, count);
        return;
    }
    const std::size_t chunk = (count + workers - 1) / workers;
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t b = w * chunk;
        const std::size_t e = std::min(count, b + chunk);
        if (b >= e) {
            break;
        }
        pool.emplace_back([&, w, b, e] {
            try {
                fn(b, e);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) {
        th.join();
    }
    for (auto& err : errors) {
        if (err) {
            std::rethrow_exception(err);
        }
    }
}

namespace {

std::mutex& table_mutex()
{
    static std::mutex m;
    return m;
}

/// Global index of local index l in a space with `block` interleaved components.
inline int global_index(const int* dofs, int l, int block)
{
    return block == 1 ? dofs[l] : block * dofs[l / block] + l % block;
}

template <class Kernel>
SparseMatrix assemble_matrix(const AssemblyContext& ctx, const DofMap& rows, int rblock, const DofMap& cols,
                             int cblock, Kernel&& kernel)
{
    const std::size_t nt = ctx.surface().num_triangles();
    const int nr = rows.local_size() * rblock;
    const int nc = cols.local_size() * cblock;
    const std::size_t per = static_cast<std::size_t>(nr) * static_cast<std::size_t>(nc);
    std::vector<Eigen::Triplet<double>> triplets(nt * per);
    parallel_blocks(nt, [&](std::size_t begin, std::size_t end) {
        Eigen::MatrixXd local(nr, nc);
        for (std::size_t t = begin; t < end; ++t) {
            local.setZero();
            kernel(t, local);
            const int* rd = rows.triangle(t);
            const int* cd = cols.triangle(t);
            auto* out = &triplets[t * per];
            for (int j = 0; j < nc; ++j) {
                const int gj = global_index(cd, j, cblock);
                for (int i = 0; i < nr; ++i) {
                    *out++ = {global_index(rd, i, rblock), gj, local(i, j)};
                }
            }
        }
    });
    SparseMatrix a(rows.size() * rblock, cols.size() * cblock);
    a.setFromTriplets(triplets.begin(), triplets.end());
    a.makeCompressed();
    return a;
}

template <class Kernel>
VecX assemble_vector(const AssemblyContext& ctx, const DofMap& rows, int rblock, Kernel&& kernel)
{
    const std::size_t nt = ctx.surface().num_triangles();
    const int nr = rows.local_size() * rblock;
    std::vector<double> locals(nt * static_cast<std::size_t>(nr));
    parallel_blocks(nt, [&](std::size_t begin, std::size_t end) {
        VecX local(nr);
        for (std::size_t t = begin; t < end; ++t) {
            local.setZero();
            kernel(t, local);
            std::copy(local.data(), local.data() + nr, &locals[t * static_cast<std::size_t>(nr)]);
        }
    });
    VecX out = VecX::Zero(rows.size() * rblock);
    for (std::size_t t = 0; t < nt; ++t) {
        const int* rd = rows.triangle(t);
        for (int i = 0; i < nr; ++i) {
            out[global_index(rd, i, rblock)] += locals[t * static_cast<std::size_t>(nr) + static_cast<std::size_t>(i)];
        }
    }
    return out;
}

void check_surface(const AssemblyContext& ctx, const CurvedSurface& s)
{
    if (&ctx.surface() != &s) {
        throw DegenerateInput("space and assembly context live on different surfaces");
    }
}

/// out += w * kron(v v^T, m) for 3x3 m
void add_kron(Eigen::MatrixXd& out, const VecX& v, const Mat3& m, double w)
{
    const auto n = v.size();
    for (Eigen::Index b = 0; b < n; ++b) {
        for (Eigen::Index a = 0; a < n; ++a) {
            out.block<3, 3>(3 * a, 3 * b) += (w * v[a] * v[b]) * m;
        }
    }
}

} // namespace

AssemblyContext::AssemblyContext(const CurvedSurface& surface, int quadrature_degree,
                                 std::optional<double> eta_override)
    : surface_(&surface), rule_(triangle_quadrature(quadrature_degree))
{
    const double h = longest_edge(surface);
    eta_ = eta_override ? *eta_override : 1.0 / (h * h);
    const std::size_t nq = rule_.size();
    std::vector<VecX> val(nq);
    std::vector<Eigen::MatrixX2d> grad(nq);
    std::vector<Eigen::MatrixX3d> hess(nq);
    for (std::size_t q = 0; q < nq; ++q) {
        surface.basis().evaluate(rule_.points[q], val[q], grad[q], &hess[q]);
    }
    geometry_.resize(surface.num_triangles() * nq);
    parallel_blocks(surface.num_triangles(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t t = begin; t < end; ++t) {
            for (std::size_t q = 0; q < nq; ++q) {
                geometry_[t * nq + q] = surface.geometry(t, val[q], grad[q], hess[q]);
            }
        }
    });
}

const BasisTable& AssemblyContext::table(int order) const
{
    const std::lock_guard<std::mutex> lock(table_mutex());
    auto it = tables_.find(order);
    if (it != tables_.end()) {
        return it->second;
    }
    const LagrangeBasis basis(order);
    BasisTable tab;
    for (const auto& p : rule_.points) {
        VecX v;
        Eigen::MatrixX2d g;
        basis.evaluate(p, v, g);
        tab.values.push_back(std::move(v));
        tab.gradients.push_back(std::move(g));
    }
    return tables_.emplace(order, std::move(tab)).first->second;
}

double AssemblyContext::area() const
{
    double a = 0.0;
    for (std::size_t t = 0; t < surface_->num_triangles(); ++t) {
        for (std::size_t q = 0; q < rule_.size(); ++q) {
            a += weight(t, q);
        }
    }
    return a;
}

SparseMatrix assemble_a_Th(const AssemblyContext& ctx, const VectorSpace& u)
{
    check_surface(ctx, u.surface());
    const BasisTable& tab = ctx.table(u.order());
    const int n = u.scalar().local_size();
    return assemble_matrix(ctx, u.scalar().dofmap(), 3, u.scalar().dofmap(), 3, [&](std::size_t t, Eigen::MatrixXd& local) {
        Eigen::Matrix<double, 9, Eigen::Dynamic> e(9, 3 * n);
        for (std::size_t q = 0; q < ctx.num_points(); ++q) {
            const QuadPointGeometry& g = ctx.geometry(t, q);
            const double w = ctx.weight(t, q);
            const Eigen::MatrixX3d grads = ctx.gradients(tab, t, q);
            const VecX& v = tab.values[q];
            const Mat3 p = g.projector();
            for (int a = 0; a < n; ++a) {
                const Vec3 ga = grads.row(a).transpose();
                for (int i = 0; i < 3; ++i) {
                    const Mat3 m = p.col(i) * ga.transpose();
                    const Mat3 et = 0.5 * (m + m.transpose()) - (v[a] * g.normal[i]) * g.weingarten;
                    e.col(3 * a + i) = Eigen::Map<const Eigen::Matrix<double, 9, 1>>(et.data());
                }
            }
            local.noalias() += w * (e.transpose() * e);
            add_kron(local, v, p, w);
        }
    });
}

SparseMatrix assemble_b(const AssemblyContext& ctx, const VectorSpace& u, const ScalarSpace& q)
{
    check_surface(ctx, u.surface());
    check_surface(ctx, q.surface());
    const BasisTable& tu = ctx.table(u.order());
    const BasisTable& tq = ctx.table(q.order());
    const int nu = u.scalar().local_size();
    return assemble_matrix(ctx, q.dofmap(), 1, u.scalar().dofmap(), 3, [&](std::size_t t, Eigen::MatrixXd& local) {
        for (std::size_t k = 0; k < ctx.num_points(); ++k) {
            const double w = ctx.weight(t, k);
            const Eigen::MatrixX3d gq = ctx.gradients(tq, t, k);
            const VecX& vu = tu.values[k];
            for (int a = 0; a < nu; ++a) {
                for (int i = 0; i < 3; ++i) {
                    local.col(3 * a + i) += (w * vu[a]) * gq.col(i);
                }
            }
        }
    });
}

SparseMatrix assemble_penalty(const AssemblyContext& ctx, const VectorSpace& u)
{
    check_surface(ctx, u.surface());
    const BasisTable& tab = ctx.table(u.order());
    return assemble_matrix(ctx, u.scalar().dofmap(), 3, u.scalar().dofmap(), 3, [&](std::size_t t, Eigen::MatrixXd& local) {
        for (std::size_t q = 0; q < ctx.num_points(); ++q) {
            const Vec3& nt = ctx.geometry(t, q).normal_improved;
            add_kron(local, tab.values[q], nt * nt.transpose(), ctx.eta() * ctx.weight(t, q));
        }
    });
}

SparseMatrix assemble_mass_scalar(const AssemblyContext& ctx, const ScalarSpace& s)
{
    check_surface(ctx, s.surface());
    const BasisTable& tab = ctx.table(s.order());
    return assemble_matrix(ctx, s.dofmap(), 1, s.dofmap(), 1, [&](std::size_t t, Eigen::MatrixXd& local) {
        for (std::size_t q = 0; q < ctx.num_points(); ++q) {
            const VecX& v = tab.values[q];
            local.noalias() += ctx.weight(t, q) * (v * v.transpose());
        }
    });
}

SparseMatrix assemble_mass_vector(const AssemblyContext& ctx, const VectorSpace& u)
{
    check_surface(ctx, u.surface());
    const BasisTable& tab = ctx.table(u.order());
    return assemble_matrix(ctx, u.scalar().dofmap(), 3, u.scalar().dofmap(), 3, [&](std::size_t t, Eigen::MatrixXd& local) {
        for (std::size_t q = 0; q < ctx.num_points(); ++q) {
            add_kron(local, tab.values[q], Mat3::Identity(), ctx.weight(t, q));
        }
    });
}

SparseMatrix assemble_stiffness(const AssemblyContext& ctx, const ScalarSpace& s)
{
    check_surface(ctx, s.surface());
    const BasisTable& tab = ctx.table(s.order());
    return assemble_matrix(ctx, s.dofmap(), 1, s.dofmap(), 1, [&](std::size_t t, Eigen::MatrixXd& local) {
        for (std::size_t q = 0; q < ctx.num_points(); ++q) {
            const Eigen::MatrixX3d g = ctx.gradients(tab, t, q);
            local.noalias() += ctx.weight(t, q) * (g * g.transpose());
        }
    });
}

SparseMatrix assemble_stiffness_K(const AssemblyContext& ctx, const ScalarSpace& s)
{
    check_surface(ctx, s.surface());
    const BasisTable& tab = ctx.table(s.order());
    return assemble_matrix(ctx, s.dofmap(), 1, s.dofmap(), 1, [&](std::size_t t, Eigen::MatrixXd& local) {
        for (std::size_t q = 0; q < ctx.num_points(); ++q) {
            const Eigen::MatrixX3d g = ctx.gradients(tab, t, q);
            const double k = ctx.geometry(t, q).gauss_improved;
            local.noalias() += (2.0 * (1.0 - k) * ctx.weight(t, q)) * (g * g.transpose());
        }
    });
}

VecX load_constant(const AssemblyContext& ctx, const ScalarSpace& s)
{
    check_surface(ctx, s.surface());
    const BasisTable& tab = ctx.table(s.order());
    return assemble_vector(ctx, s.dofmap(), 1, [&](std::size_t t, VecX& local) {
        for (std::size_t q = 0; q < ctx.num_points(); ++q) {
            local += ctx.weight(t, q) * tab.values[q];
        }
    });
}

VecX load_f(const AssemblyContext& ctx, const VectorSpace& u, const VectorField& f)
{
    check_surface(ctx, u.surface());
    const BasisTable& tab = ctx.table(u.order());
    const int n = u.scalar().local_size();
    return assemble_vector(ctx, u.scalar().dofmap(), 3, [&](std::size_t t, VecX& local) {
        for (std::size_t q = 0; q < ctx.num_points(); ++q) {
            const Vec3 fx = ctx.weight(t, q) * f(ctx.geometry(t, q).x);
            const VecX& v = tab.values[q];
            for (int a = 0; a < n; ++a) {
                local.segment<3>(3 * a) += v[a] * fx;
            }
        }
    });
}

VecX load_g(const AssemblyContext& ctx, const ScalarSpace& s, const VectorField& f)
{
    check_surface(ctx, s.surface());
    const BasisTable& tab = ctx.table(s.order());
    return assemble_vector(ctx, s.dofmap(), 1, [&](std::size_t t, VecX& local) {
        for (std::size_t q = 0; q < ctx.num_points(); ++q) {
            const QuadPointGeometry& g = ctx.geometry(t, q);
            const Eigen::MatrixX3d grads = ctx.gradients(tab, t, q);
            const Vec3 fx = f(g.x);
            // f . (n x grad xi) = (f x n) . grad xi
            const Vec3 fn = -2.0 * ctx.weight(t, q) * fx.cross(g.normal_improved);
            local += grads * fn;
        }
    });
}

namespace {

Vec3 gradient_of(const Eigen::MatrixX3d& grads, const VecX& coeffs, const int* dofs)
{
    Vec3 r = Vec3::Zero();
    for (Eigen::Index i = 0; i < grads.rows(); ++i) {
        r += coeffs[dofs[i]] * grads.row(i).transpose();
    }
    return r;
}

} // namespace

VecX load_velocity_reconstruction(const AssemblyContext& ctx, const VectorSpace& u, const ScalarSpace& psi_space,
                                  const VecX& psi)
{
    check_surface(ctx, u.surface());
    check_surface(ctx, psi_space.surface());
    const BasisTable& tu = ctx.table(u.order());
    const BasisTable& tp = ctx.table(psi_space.order());
    const int n = u.scalar().local_size();
    return assemble_vector(ctx, u.scalar().dofmap(), 3, [&](std::size_t t, VecX& local) {
        const int* pd = psi_space.dofmap().triangle(t);
        for (std::size_t q = 0; q < ctx.num_points(); ++q) {
            const QuadPointGeometry& g = ctx.geometry(t, q);
            const Vec3 curl = g.normal_improved.cross(gradient_of(ctx.gradients(tp, t, q), psi, pd));
            const Vec3 wc = ctx.weight(t, q) * curl;
            const VecX& v = tu.values[q];
            for (int a = 0; a < n; ++a) {
                local.segment<3>(3 * a) += v[a] * wc;
            }
        }
    });
}

VecX load_pressure_reconstruction(const AssemblyContext& ctx, const ScalarSpace& s, const ScalarSpace& psi_space,
                                  const VecX& psi, const VectorField& f)
{
    check_surface(ctx, s.surface());
    check_surface(ctx, psi_space.surface());
    const BasisTable& ts = ctx.table(s.order());
    const BasisTable& tp = ctx.table(psi_space.order());
    return assemble_vector(ctx, s.dofmap(), 1, [&](std::size_t t, VecX& local) {
        const int* pd = psi_space.dofmap().triangle(t);
        for (std::size_t q = 0; q < ctx.num_points(); ++q) {
            const QuadPointGeometry& g = ctx.geometry(t, q);
            const Vec3 curl = g.normal_improved.cross(gradient_of(ctx.gradients(tp, t, q), psi, pd));
            const Vec3 rhs = ctx.weight(t, q) * (g.gauss_improved * curl + f(g.x));
            local += ctx.gradients(ts, t, q) * rhs;
        }
    });
}

} // namespace surfstokes
