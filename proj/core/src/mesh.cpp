#include "surfstokes/mesh.hpp"

#include "surfstokes/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <unordered_map>

namespace surfstokes {

namespace {

constexpr double kMinArea = 1e-14;

std::uint64_t edge_key(int a, int b)
{
    return (static_cast<std::uint64_t>(std::min(a, b)) << 32) | static_cast<std::uint32_t>(std::max(a, b));
}

double angle_deg(const Vec3& a, const Vec3& b)
{
    const double c = a.dot(b) / (a.norm() * b.norm());
    return std::acos(std::clamp(c, -1.0, 1.0)) * 180.0 / std::numbers::pi;
}

} // namespace

LinearSurfaceMesh::LinearSurfaceMesh(std::vector<Vec3> vertices, std::vector<Triangle> triangles, int level)
    : vertices_(std::move(vertices)), triangles_(std::move(triangles)), level_(level)
{
    const int nv = static_cast<int>(vertices_.size());
    std::unordered_map<std::uint64_t, int> lookup;
    lookup.reserve(triangles_.size() * 2);
    tri_edges_.resize(triangles_.size());
    for (std::size_t t = 0; t < triangles_.size(); ++t) {
        const auto& tri = triangles_[t];
        for (int i = 0; i < 3; ++i) {
            if (tri[static_cast<std::size_t>(i)] < 0 || tri[static_cast<std::size_t>(i)] >= nv) {
                throw InvalidMesh("triangle references a vertex index out of range");
            }
        }
        if (tri[0] == tri[1] || tri[1] == tri[2] || tri[2] == tri[0]) {
            throw InvalidMesh("triangle with repeated vertex");
        }
        for (int e = 0; e < 3; ++e) {
            const int a = tri[static_cast<std::size_t>(e)];
            const int b = tri[static_cast<std::size_t>((e + 1) % 3)];
            const auto [it, inserted] = lookup.try_emplace(edge_key(a, b), static_cast<int>(edges_.size()));
            if (inserted) {
                edges_.push_back({std::min(a, b), std::max(a, b)});
                edge_valence_.push_back(0);
            }
            ++edge_valence_[static_cast<std::size_t>(it->second)];
            tri_edges_[t][static_cast<std::size_t>(e)] = it->second;
        }
    }
}

Vec3 LinearSurfaceMesh::area_normal(std::size_t t) const
{
    const Vec3 a = corner(t, 0);
    return (corner(t, 1) - a).cross(corner(t, 2) - a);
}

MeshStats stats(const LinearSurfaceMesh& mesh)
{
    MeshStats s;
    s.F = mesh.num_triangles();
    s.E = mesh.num_edges();
    s.V = mesh.num_vertices();
    s.min_angle = 180.0;
    double sum = 0.0;
    for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
        double longest = 0.0;
        for (int i = 0; i < 3; ++i) {
            const Vec3 p = mesh.corner(t, i);
            const Vec3 q = mesh.corner(t, (i + 1) % 3);
            const Vec3 r = mesh.corner(t, (i + 2) % 3);
            longest = std::max(longest, (q - p).norm());
            s.min_angle = std::min(s.min_angle, angle_deg(q - p, r - p));
        }
        s.h_max = std::max(s.h_max, longest);
        sum += longest;
    }
    s.h_avg = s.F > 0 ? sum / static_cast<double>(s.F) : 0.0;
    return s;
}

void validate_closed(const LinearSurfaceMesh& mesh)
{
    if (mesh.num_triangles() == 0) {
        throw ManifoldError("mesh has no triangles");
    }
    std::vector<int> forward(mesh.num_edges(), 0);
    for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
        const auto& tri = mesh.triangles()[t];
        for (int e = 0; e < 3; ++e) {
            if (tri[static_cast<std::size_t>(e)] < tri[static_cast<std::size_t>((e + 1) % 3)]) {
                ++forward[static_cast<std::size_t>(mesh.triangle_edge(t, e))];
            }
        }
        if (0.5 * mesh.area_normal(t).norm() < kMinArea) {
            throw DegenerateMesh("triangle " + std::to_string(t) + " has area below 1e-14");
        }
    }
    for (std::size_t e = 0; e < mesh.num_edges(); ++e) {
        if (mesh.edge_valence()[e] != 2) {
            throw ManifoldError("edge " + std::to_string(e) + " has " +
                                std::to_string(mesh.edge_valence()[e]) + " incident triangles");
        }
        if (forward[e] != 1) {
            throw ManifoldError("inconsistent triangle orientation across edge " + std::to_string(e));
        }
    }
    std::vector<char> used(mesh.num_vertices(), 0);
    for (const auto& tri : mesh.triangles()) {
        for (int v : tri) {
            used[static_cast<std::size_t>(v)] = 1;
        }
    }
    if (std::find(used.begin(), used.end(), 0) != used.end()) {
        throw ManifoldError("mesh has isolated vertices");
    }
    if (mesh.euler_characteristic() != 2) {
        throw ManifoldError("Euler characteristic " + std::to_string(mesh.euler_characteristic()) +
                            " differs from 2");
    }
}

void validate_orientation(const LinearSurfaceMesh& mesh, const LevelSetField& field)
{
    for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
        const Vec3 centroid = (mesh.corner(t, 0) + mesh.corner(t, 1) + mesh.corner(t, 2)) / 3.0;
        if (mesh.area_normal(t).dot(field.gradient(centroid)) <= 0.0) {
            throw ManifoldError("triangle " + std::to_string(t) + " is not outward oriented");
        }
    }
}

namespace {

LinearSurfaceMesh icosahedron()
{
    const double g = (1.0 + std::sqrt(5.0)) / 2.0;
    std::vector<Vec3> v = {{-1, g, 0}, {1, g, 0},  {-1, -g, 0}, {1, -g, 0}, {0, -1, g},  {0, 1, g},
                           {0, -1, -g}, {0, 1, -g}, {g, 0, -1},  {g, 0, 1},  {-g, 0, -1}, {-g, 0, 1}};
    for (auto& p : v) {
        p.normalize();
    }
    std::vector<Triangle> f = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                               {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                               {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                               {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
    return {std::move(v), std::move(f), 0};
}

template <class MidpointFn>
LinearSurfaceMesh quarter(const LinearSurfaceMesh& mesh, MidpointFn&& midpoint)
{
    std::vector<Vec3> v = mesh.vertices();
    const int nv = static_cast<int>(v.size());
    v.reserve(v.size() + mesh.num_edges());
    for (const auto& e : mesh.edges()) {
        v.push_back(midpoint(mesh.vertices()[static_cast<std::size_t>(e[0])],
                             mesh.vertices()[static_cast<std::size_t>(e[1])]));
    }
    std::vector<Triangle> f;
    f.reserve(4 * mesh.num_triangles());
    for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
        const auto& tri = mesh.triangles()[t];
        const int m01 = nv + mesh.triangle_edge(t, 0);
        const int m12 = nv + mesh.triangle_edge(t, 1);
        const int m20 = nv + mesh.triangle_edge(t, 2);
        f.push_back({tri[0], m01, m20});
        f.push_back({m01, tri[1], m12});
        f.push_back({m20, m12, tri[2]});
        f.push_back({m01, m12, m20});
    }
    return {std::move(v), std::move(f), mesh.level() + 1};
}

LinearSurfaceMesh with_vertices(const LinearSurfaceMesh& mesh, std::vector<Vec3> v)
{
    return {std::move(v), mesh.triangles(), mesh.level()};
}

} // namespace

LinearSurfaceMesh icosphere(int level)
{
    if (level < 0) {
        throw DegenerateInput("icosphere level must be non-negative");
    }
    LinearSurfaceMesh m = icosahedron();
    for (int l = 0; l < level; ++l) {
        m = quarter(m, [](const Vec3& a, const Vec3& b) { return Vec3((a + b).normalized()); });
    }
    validate_closed(m);
    return m;
}

LinearSurfaceMesh map_radially(const LinearSurfaceMesh& mesh, const LevelSetField& field)
{
    std::vector<Vec3> v;
    v.reserve(mesh.num_vertices());
    for (const auto& p : mesh.vertices()) {
        v.push_back(radial_point(field, p));
    }
    auto out = with_vertices(mesh, std::move(v));
    validate_closed(out);
    return out;
}

LinearSurfaceMesh project_to_levelset(const LinearSurfaceMesh& mesh, const LevelSetField& field)
{
    std::vector<Vec3> v;
    v.reserve(mesh.num_vertices());
    for (const auto& p : mesh.vertices()) {
        // Points already on the surface are left bit-identical.
        v.push_back(std::abs(field.value(p)) <= 1e-14 ? p : closest_point(field, p));
    }
    auto out = with_vertices(mesh, std::move(v));
    validate_closed(out);
    return out;
}

LinearSurfaceMesh refine_red(const LinearSurfaceMesh& mesh, const LevelSetField& field)
{
    auto out = quarter(mesh, [&](const Vec3& a, const Vec3& b) { return closest_point(field, 0.5 * (a + b)); });
    validate_closed(out);
    return out;
}

LinearSurfaceMesh smooth_tangential(const LinearSurfaceMesh& mesh, const LevelSetField& field, int sweeps)
{
    std::vector<std::vector<int>> nbr(mesh.num_vertices());
    for (const auto& e : mesh.edges()) {
        nbr[static_cast<std::size_t>(e[0])].push_back(e[1]);
        nbr[static_cast<std::size_t>(e[1])].push_back(e[0]);
    }
    std::vector<Vec3> v = mesh.vertices();
    for (int s = 0; s < sweeps; ++s) {
        std::vector<Vec3> next(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) {
            Vec3 avg = Vec3::Zero();
            for (int j : nbr[i]) {
                avg += v[static_cast<std::size_t>(j)];
            }
            avg /= static_cast<double>(nbr[i].size());
            next[i] = closest_point(field, avg);
        }
        v = std::move(next);
    }
    auto out = with_vertices(mesh, std::move(v));
    validate_closed(out);
    return out;
}

LinearSurfaceMesh initial_mesh(const LevelSetField& field, int base_level, bool smooth)
{
    LinearSurfaceMesh m = icosphere(base_level);
    if (field.kind() == SurfaceKind::plane) {
        throw DegenerateInput("a closed initial mesh needs a closed surface");
    }
    m = project_to_levelset(map_radially(m, field), field);
    if (smooth && stats(m).min_angle < 10.0) {
        m = smooth_tangential(m, field, 5);
    }
    validate_orientation(m, field);
    return {m.vertices(), m.triangles(), 0};
}

LinearSurfaceMesh mesh_hierarchy_level(const LevelSetField& field, int base_level, int refinements, bool smooth)
{
    LinearSurfaceMesh m = initial_mesh(field, base_level, smooth);
    for (int l = 0; l < refinements; ++l) {
        m = refine_red(m, field);
    }
    return m;
}

std::string to_off(const LinearSurfaceMesh& mesh)
{
    std::ostringstream os;
    os.precision(std::numeric_limits<double>::max_digits10);
    os << "OFF\n" << mesh.num_vertices() << ' ' << mesh.num_triangles() << " 0\n";
    for (const auto& p : mesh.vertices()) {
        os << p[0] << ' ' << p[1] << ' ' << p[2] << '\n';
    }
    for (const auto& t : mesh.triangles()) {
        os << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
    }
    return os.str();
}

void export_off(const LinearSurfaceMesh& mesh, const std::string& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot open " + path + " for writing");
    }
    out << to_off(mesh);
}

LinearSurfaceMesh parse_off(const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    // Next non-empty, non-comment line split into tokens.
    const auto next = [&](const char* what) {
        while (std::getline(in, line)) {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos) {
                line.erase(hash);
            }
            if (line.find_first_not_of(" \t\r") != std::string::npos) {
                return std::istringstream(line);
            }
        }
        throw ParseError(std::string("unexpected end of file, expected ") + what, lineno + 1);
    };

    {
        auto hdr = next("OFF header");
        std::string tag;
        hdr >> tag;
        if (tag != "OFF") {
            throw ParseError("missing OFF header", lineno);
        }
    }
    long nv = -1;
    long nf = -1;
    long ne = -1;
    {
        auto counts = next("counts line");
        if (!(counts >> nv >> nf >> ne) || nv < 0 || nf < 0) {
            throw ParseError("malformed counts line", lineno);
        }
    }
    std::vector<Vec3> v(static_cast<std::size_t>(nv));
    for (auto& p : v) {
        auto ls = next("vertex line");
        if (!(ls >> p[0] >> p[1] >> p[2])) {
            throw ParseError("malformed vertex line", lineno);
        }
    }
    std::vector<Triangle> f(static_cast<std::size_t>(nf));
    for (auto& t : f) {
        auto ls = next("face line");
        int n = 0;
        if (!(ls >> n) || n != 3) {
            throw ParseError("only triangular faces are supported", lineno);
        }
        if (!(ls >> t[0] >> t[1] >> t[2])) {
            throw ParseError("malformed face line", lineno);
        }
        for (int idx : t) {
            if (idx < 0 || idx >= nv) {
                throw ParseError("face references vertex out of range", lineno);
            }
        }
        if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2]) {
            throw ParseError("face with repeated vertex", lineno);
        }
    }
    LinearSurfaceMesh mesh(std::move(v), std::move(f), 0);
    validate_closed(mesh);
    return mesh;
}

LinearSurfaceMesh import_off(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_off(ss.str());
}

} // namespace surfstokes
