#include "lohho/mesh_families.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>

#include "lohho/mesh_io.hpp"

namespace lohho {

namespace {

std::size_t grid_index(int i, int j, int n) { return static_cast<std::size_t>(j) * (n + 1) + i; }

std::size_t grid_index(int i, int j, int k, int n)
{
    return (static_cast<std::size_t>(k) * (n + 1) + j) * (n + 1) + i;
}

std::vector<Point> unit_grid_2d(int n)
{
    std::vector<Point> v;
    v.reserve(static_cast<std::size_t>(n + 1) * (n + 1));
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i)
            v.emplace_back(double(i) / n, double(j) / n, 0.0);
    return v;
}

std::vector<Point> unit_grid_3d(int n)
{
    std::vector<Point> v;
    v.reserve(static_cast<std::size_t>(n + 1) * (n + 1) * (n + 1));
    for (int k = 0; k <= n; ++k)
        for (int j = 0; j <= n; ++j)
            for (int i = 0; i <= n; ++i)
                v.emplace_back(double(i) / n, double(j) / n, double(k) / n);
    return v;
}

// Deduplicates face loops (by their vertex set) in order of first appearance.
Mesh polyhedra_from_face_loops(std::vector<Point> vertices,
                               const std::vector<std::vector<std::vector<std::size_t>>>& cells)
{
    std::map<std::vector<std::size_t>, std::size_t> face_id;
    std::vector<std::vector<std::size_t>> faces;
    std::vector<std::vector<std::size_t>> cell_faces(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
        for (const auto& loop : cells[c]) {
            auto key = loop;
            std::sort(key.begin(), key.end());
            auto [it, inserted] = face_id.try_emplace(std::move(key), faces.size());
            if (inserted)
                faces.push_back(loop);
            cell_faces[c].push_back(it->second);
        }
    }
    return Mesh::from_polyhedra(std::move(vertices), std::move(faces), std::move(cell_faces));
}

} // namespace

void MeshFamilySpec::validate() const
{
    if (n < 1)
        throw ConfigError("mesh resolution must be >= 1");
    if (dim != 2 && dim != 3)
        throw ConfigError("mesh dimension must be 2 or 3");
    if ((family == MeshFamily::file) != !path.empty())
        throw ConfigError("a mesh file path is required exactly for the 'file' family");
    if (family == MeshFamily::cube_to_tet && dim != 3)
        throw ConfigError("cube-to-tet meshes are three-dimensional");
    if ((family == MeshFamily::structured_triangular || family == MeshFamily::distorted_quadrangular) && dim != 2)
        throw ConfigError(to_string(family) + " meshes are two-dimensional");
    if (domain == MeshDomain::notched_square
        && !(dim == 2 && (family == MeshFamily::cartesian || family == MeshFamily::structured_triangular)))
        throw ConfigError("the notched-square domain supports 2D cartesian and structured-triangular families");
}

MeshFamily parse_family(const std::string& name)
{
    if (name == "cartesian")
        return MeshFamily::cartesian;
    if (name == "structured-triangular" || name == "triangular")
        return MeshFamily::structured_triangular;
    if (name == "distorted-quadrangular")
        return MeshFamily::distorted_quadrangular;
    if (name == "cube-to-tet")
        return MeshFamily::cube_to_tet;
    if (name == "file")
        return MeshFamily::file;
    throw ConfigError("unknown mesh family '" + name + "'");
}

std::string to_string(MeshFamily family)
{
    switch (family) {
    case MeshFamily::cartesian: return "cartesian";
    case MeshFamily::structured_triangular: return "structured-triangular";
    case MeshFamily::distorted_quadrangular: return "distorted-quadrangular";
    case MeshFamily::cube_to_tet: return "cube-to-tet";
    case MeshFamily::file: return "file";
    }
    return "unknown";
}

MeshDomain parse_domain(const std::string& name)
{
    if (name == "unit-box")
        return MeshDomain::unit_box;
    if (name == "notched-square")
        return MeshDomain::notched_square;
    throw ConfigError("unknown mesh domain '" + name + "'");
}

Mesh cartesian_mesh_2d(int n)
{
    std::vector<std::vector<std::size_t>> cells;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            cells.push_back({grid_index(i, j, n), grid_index(i + 1, j, n), grid_index(i + 1, j + 1, n),
                             grid_index(i, j + 1, n)});
    return Mesh::from_polygons(unit_grid_2d(n), cells);
}

Mesh structured_triangular_mesh(int n)
{
    std::vector<std::vector<std::size_t>> cells;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const auto v00 = grid_index(i, j, n), v10 = grid_index(i + 1, j, n);
            const auto v01 = grid_index(i, j + 1, n), v11 = grid_index(i + 1, j + 1, n);
            cells.push_back({v00, v10, v11});
            cells.push_back({v00, v11, v01});
        }
    return Mesh::from_polygons(unit_grid_2d(n), cells);
}

Mesh distorted_quadrangular_mesh(int n)
{
    auto vertices = unit_grid_2d(n);
    for (auto& p : vertices) {
        const double s = 0.1 * std::sin(2 * std::numbers::pi * p.x()) * std::sin(2 * std::numbers::pi * p.y());
        p = Point(p.x() + s, p.y() + s, 0.0);
    }
    std::vector<std::vector<std::size_t>> cells;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            cells.push_back({grid_index(i, j, n), grid_index(i + 1, j, n), grid_index(i + 1, j + 1, n),
                             grid_index(i, j + 1, n)});
    return Mesh::from_polygons(std::move(vertices), cells);
}

Mesh cartesian_mesh_3d(int n)
{
    std::vector<std::vector<std::vector<std::size_t>>> cells;
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                auto v = [&](int a, int b, int c) { return grid_index(i + a, j + b, k + c, n); };
                cells.push_back({
                    {v(0, 0, 0), v(0, 1, 0), v(1, 1, 0), v(1, 0, 0)}, // z-
                    {v(0, 0, 1), v(1, 0, 1), v(1, 1, 1), v(0, 1, 1)}, // z+
                    {v(0, 0, 0), v(1, 0, 0), v(1, 0, 1), v(0, 0, 1)}, // y-
                    {v(0, 1, 0), v(0, 1, 1), v(1, 1, 1), v(1, 1, 0)}, // y+
                    {v(0, 0, 0), v(0, 0, 1), v(0, 1, 1), v(0, 1, 0)}, // x-
                    {v(1, 0, 0), v(1, 1, 0), v(1, 1, 1), v(1, 0, 1)}, // x+
                });
            }
    return polyhedra_from_face_loops(unit_grid_3d(n), cells);
}

// Kuhn subdivision: six tetrahedra sharing the cube diagonal (0,0,0)-(1,1,1).
Mesh cube_to_tet_mesh(int n)
{
    static constexpr std::array<std::array<int, 3>, 6> perms = {
        {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
    std::vector<std::vector<std::vector<std::size_t>>> cells;
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i)
                for (const auto& p : perms) {
                    std::array<int, 3> c = {0, 0, 0};
                    std::array<std::size_t, 4> t{};
                    t[0] = grid_index(i, j, k, n);
                    for (int s = 0; s < 3; ++s) {
                        c[p[s]] = 1;
                        t[s + 1] = grid_index(i + c[0], j + c[1], k + c[2], n);
                    }
                    cells.push_back({{t[0], t[1], t[2]}, {t[0], t[1], t[3]}, {t[0], t[2], t[3]}, {t[1], t[2], t[3]}});
                }
    return polyhedra_from_face_loops(unit_grid_3d(n), cells);
}

Mesh notched_square_mesh(int n, bool triangles)
{
    const double s = std::numbers::sqrt2 / 2.0;
    const std::array<std::array<Vec, 2>, 3> patches = {{
        {Vec(s, -s, 0), Vec(s, s, 0)},
        {Vec(s, s, 0), Vec(-s, s, 0)},
        {Vec(-s, -s, 0), Vec(s, -s, 0)},
    }};

    std::vector<Point> vertices;
    std::map<std::array<long long, 2>, std::size_t> lookup;
    auto vertex = [&](const Point& p) {
        const std::array<long long, 2> key = {std::llround(p.x() * 1e9), std::llround(p.y() * 1e9)};
        auto [it, inserted] = lookup.try_emplace(key, vertices.size());
        if (inserted)
            vertices.push_back(p);
        return it->second;
    };

    std::vector<std::vector<std::size_t>> cells;
    for (const auto& [e1, e2] : patches) {
        std::vector<std::size_t> ids;
        for (int j = 0; j <= n; ++j)
            for (int i = 0; i <= n; ++i)
                ids.push_back(vertex((double(i) / n) * e1 + (double(j) / n) * e2));
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                const auto v00 = ids[grid_index(i, j, n)], v10 = ids[grid_index(i + 1, j, n)];
                const auto v01 = ids[grid_index(i, j + 1, n)], v11 = ids[grid_index(i + 1, j + 1, n)];
                if (triangles) {
                    cells.push_back({v00, v10, v11});
                    cells.push_back({v00, v11, v01});
                } else {
                    cells.push_back({v00, v10, v11, v01});
                }
            }
    }
    return Mesh::from_polygons(std::move(vertices), cells);
}

Mesh build_mesh(const MeshFamilySpec& spec)
{
    spec.validate();
    if (spec.domain == MeshDomain::notched_square)
        return notched_square_mesh(spec.n, spec.family == MeshFamily::structured_triangular);
    switch (spec.family) {
    case MeshFamily::cartesian: return spec.dim == 2 ? cartesian_mesh_2d(spec.n) : cartesian_mesh_3d(spec.n);
    case MeshFamily::structured_triangular: return structured_triangular_mesh(spec.n);
    case MeshFamily::distorted_quadrangular: return distorted_quadrangular_mesh(spec.n);
    case MeshFamily::cube_to_tet: return cube_to_tet_mesh(spec.n);
    case MeshFamily::file: return read_mesh(spec.path);
    }
    throw ConfigError("unsupported mesh family");
}

} // namespace lohho
