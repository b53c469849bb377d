#include "surfstokes/dofmap.hpp"

#include "surfstokes/errors.hpp"

namespace surfstokes {

DofMap::DofMap(const LinearSurfaceMesh& mesh, int order)
    : order_(order), local_size_((order + 1) * (order + 2) / 2)
{
    if (order < 1) {
        throw InvalidOrder("Lagrange order must be at least 1");
    }
    const int m = order;
    const int nv = static_cast<int>(mesh.num_vertices());
    const int ne = static_cast<int>(mesh.num_edges());
    const int per_edge = m - 1;
    const int per_tri = (m - 1) * (m - 2) / 2;
    const int edge_base = nv;
    const int interior_base = nv + per_edge * ne;
    size_ = interior_base + per_tri * static_cast<int>(mesh.num_triangles());

    map_.resize(mesh.num_triangles() * static_cast<std::size_t>(local_size_));
    owners_.assign(static_cast<std::size_t>(size_), {-1, -1});
    for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
        const auto& tri = mesh.triangles()[t];
        int* local = &map_[t * static_cast<std::size_t>(local_size_)];
        int k = 0;
        for (int i = 0; i < 3; ++i) {
            local[k++] = tri[static_cast<std::size_t>(i)];
        }
        for (int e = 0; e < 3; ++e) {
            const int a = tri[static_cast<std::size_t>(e)];
            const int b = tri[static_cast<std::size_t>((e + 1) % 3)];
            const int base = edge_base + per_edge * mesh.triangle_edge(t, e);
            for (int s = 1; s < m; ++s) {
                local[k++] = base + (a < b ? s - 1 : m - 1 - s);
            }
        }
        const int ibase = interior_base + per_tri * static_cast<int>(t);
        for (int s = 0; s < per_tri; ++s) {
            local[k++] = ibase + s;
        }
        for (int i = 0; i < local_size_; ++i) {
            auto& o = owners_[static_cast<std::size_t>(local[i])];
            if (o.first < 0) {
                o = {static_cast<int>(t), i};
            }
        }
    }
}

} // namespace surfstokes
