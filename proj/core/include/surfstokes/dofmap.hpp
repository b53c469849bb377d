#pragma once

#include "surfstokes/mesh.hpp"

#include <utility>
#include <vector>

namespace surfstokes {

/// Global numbering of the order-m Lagrange nodes of a triangulation:
/// vertices first, then m-1 nodes per edge ordered away from the lower global
/// vertex index, then (m-1)(m-2)/2 interior nodes per triangle.
class DofMap {
public:
    DofMap(const LinearSurfaceMesh& mesh, int order);

    [[nodiscard]] int order() const noexcept { return order_; }
    [[nodiscard]] int local_size() const noexcept { return local_size_; }
    [[nodiscard]] int size() const noexcept { return size_; }
    /// Global node index of local node i on triangle t.
    [[nodiscard]] int global(std::size_t t, int i) const
    {
        return map_[t * static_cast<std::size_t>(local_size_) + static_cast<std::size_t>(i)];
    }
    [[nodiscard]] const int* triangle(std::size_t t) const { return &map_[t * static_cast<std::size_t>(local_size_)]; }
    [[nodiscard]] std::size_t num_triangles() const noexcept { return map_.size() / static_cast<std::size_t>(local_size_); }

    /// First (triangle, local index) occurrence of every global node.
    [[nodiscard]] const std::vector<std::pair<int, int>>& owners() const noexcept { return owners_; }

    [[nodiscard]] static long expected_size(long V, long E, long F, int order)
    {
        return V + (order - 1) * E + static_cast<long>((order - 1) * (order - 2) / 2) * F;
    }

private:
    int order_;
    int local_size_;
    int size_ = 0;
    std::vector<int> map_;
    std::vector<std::pair<int, int>> owners_;
};

} // namespace surfstokes
