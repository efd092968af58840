#include "lohho/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <sstream>
#include <utility>

namespace lohho {

namespace {

using EdgeKey = std::pair<std::size_t, std::size_t>;

EdgeKey edge_key(std::size_t a, std::size_t b) { return {std::min(a, b), std::max(a, b)}; }

double max_pairwise_distance(const std::vector<Point>& pts, const std::vector<std::size_t>& ids)
{
    double d = 0.0;
    for (std::size_t i = 0; i < ids.size(); ++i)
        for (std::size_t j = i + 1; j < ids.size(); ++j)
            d = std::max(d, (pts[ids[i]] - pts[ids[j]]).norm());
    return d;
}

double signed_area_2d(const std::vector<Point>& pts, const std::vector<std::size_t>& loop)
{
    double a = 0.0;
    for (std::size_t k = 0; k < loop.size(); ++k) {
        const Point& p = pts[loop[k]];
        const Point& q = pts[loop[(k + 1) % loop.size()]];
        a += p.x() * q.y() - q.x() * p.y();
    }
    return 0.5 * a;
}

void fill_face_geometry_2d(const Mesh& mesh, Face& f, std::size_t id)
{
    if (f.vertices.size() != 2)
        throw GeometryError("face " + std::to_string(id) + " in a 2D mesh must have 2 vertices");
    const Point& a = mesh.vertices[f.vertices[0]];
    const Point& b = mesh.vertices[f.vertices[1]];
    f.measure = (b - a).norm();
    f.diameter = f.measure;
    f.centroid = 0.5 * (a + b);
    if (!(f.measure > 0.0))
        throw GeometryError("degenerate face " + std::to_string(id) + " (zero length)");
}

// Unit normal follows the vertex loop orientation (Newell's method).
void fill_face_geometry_3d(const Mesh& mesh, Face& f, std::size_t id)
{
    const auto& loop = f.vertices;
    if (loop.size() < 3)
        throw GeometryError("face " + std::to_string(id) + " has fewer than 3 vertices");

    Vec newell = Vec::Zero();
    Point avg = Point::Zero();
    for (std::size_t k = 0; k < loop.size(); ++k) {
        newell += mesh.vertices[loop[k]].cross(mesh.vertices[loop[(k + 1) % loop.size()]]);
        avg += mesh.vertices[loop[k]];
    }
    avg /= static_cast<double>(loop.size());
    const double twice_area = newell.norm();
    f.diameter = max_pairwise_distance(mesh.vertices, loop);
    if (!(twice_area > 1e-14 * f.diameter * f.diameter))
        throw GeometryError("degenerate face " + std::to_string(id) + " (zero area)");
    const Vec n = newell / twice_area;

    double area = 0.0;
    Point centroid = Point::Zero();
    for (std::size_t k = 0; k < loop.size(); ++k) {
        const Point& a = mesh.vertices[loop[k]];
        const Point& b = mesh.vertices[loop[(k + 1) % loop.size()]];
        const double ak = 0.5 * (a - avg).cross(b - avg).dot(n);
        area += ak;
        centroid += ak * (avg + a + b) / 3.0;
    }
    f.measure = area;
    f.centroid = centroid / area;
    f.normal = n;

    for (auto v : loop) {
        const double off = std::abs((mesh.vertices[v] - f.centroid).dot(n));
        if (off > 1e-9 * f.diameter)
            throw GeometryError("non-planar face " + std::to_string(id) + " (offset "
                                + std::to_string(off) + ")");
    }
}

void fill_cell_geometry_2d(const Mesh& mesh, Cell& c, std::size_t id)
{
    const auto& loop = c.vertices;
    const std::size_t n = loop.size();
    Point ref = Point::Zero();
    for (auto v : loop)
        ref += mesh.vertices[v];
    ref /= static_cast<double>(n);

    double area = 0.0;
    Point centroid = Point::Zero();
    c.normals.assign(n, Vec::Zero());
    for (std::size_t k = 0; k < n; ++k) {
        const Point& a = mesh.vertices[loop[k]];
        const Point& b = mesh.vertices[loop[(k + 1) % n]];
        const double ak = 0.5 * ((a - ref).x() * (b - ref).y() - (a - ref).y() * (b - ref).x());
        area += ak;
        centroid += ak * (ref + a + b) / 3.0;
        const Vec t = b - a;
        c.normals[k] = Vec(t.y(), -t.x(), 0.0) / t.norm();
    }
    if (!(area > 0.0))
        throw GeometryError("degenerate cell " + std::to_string(id) + " (non-positive area)");
    c.measure = area;
    c.centroid = centroid / area;
    c.diameter = max_pairwise_distance(mesh.vertices, loop);
}

// Orients the faces of a polyhedron consistently by propagating across shared
// edges, then picks the global sign that makes the enclosed volume positive.
void fill_cell_geometry_3d(const Mesh& mesh, Cell& c, std::size_t id)
{
    const std::size_t nf = c.faces.size();
    std::map<EdgeKey, std::vector<std::pair<std::size_t, int>>> edge_faces;
    for (std::size_t k = 0; k < nf; ++k) {
        const auto& loop = mesh.faces[c.faces[k]].vertices;
        for (std::size_t j = 0; j < loop.size(); ++j) {
            const std::size_t a = loop[j], b = loop[(j + 1) % loop.size()];
            edge_faces[edge_key(a, b)].push_back({k, a < b ? +1 : -1});
        }
    }
    for (const auto& [key, list] : edge_faces)
        if (list.size() != 2)
            throw GeometryError("cell " + std::to_string(id) + " surface is not closed at edge ("
                                + std::to_string(key.first) + "," + std::to_string(key.second) + ")");

    std::vector<int> orient(nf, 0);
    orient[0] = 1;
    std::queue<std::size_t> todo;
    todo.push(0);
    while (!todo.empty()) {
        const std::size_t k = todo.front();
        todo.pop();
        const auto& loop = mesh.faces[c.faces[k]].vertices;
        for (std::size_t j = 0; j < loop.size(); ++j) {
            const auto& list = edge_faces[edge_key(loop[j], loop[(j + 1) % loop.size()])];
            const auto& self = list[0].first == k ? list[0] : list[1];
            const auto& other = list[0].first == k ? list[1] : list[0];
            const int want = -orient[k] * self.second * other.second;
            if (orient[other.first] == 0) {
                orient[other.first] = want;
                todo.push(other.first);
            } else if (orient[other.first] != want) {
                throw GeometryError("cell " + std::to_string(id) + " surface is not orientable");
            }
        }
    }
    if (std::find(orient.begin(), orient.end(), 0) != orient.end())
        throw GeometryError("cell " + std::to_string(id) + " surface is not connected");

    Point ref = Point::Zero();
    for (auto v : c.vertices)
        ref += mesh.vertices[v];
    ref /= static_cast<double>(c.vertices.size());

    double volume = 0.0;
    Point centroid = Point::Zero();
    for (std::size_t k = 0; k < nf; ++k) {
        const Face& f = mesh.faces[c.faces[k]];
        const auto& loop = f.vertices;
        for (std::size_t j = 0; j < loop.size(); ++j) {
            const Point& a = mesh.vertices[loop[j]];
            const Point& b = mesh.vertices[loop[(j + 1) % loop.size()]];
            const double vol = orient[k] * (f.centroid - ref).dot((a - ref).cross(b - ref)) / 6.0;
            volume += vol;
            centroid += vol * (ref + f.centroid + a + b) / 4.0;
        }
    }
    if (volume < 0.0) {
        for (auto& o : orient)
            o = -o;
        volume = -volume;
        centroid = -centroid;
    }
    c.diameter = max_pairwise_distance(mesh.vertices, c.vertices);
    if (!(volume > 1e-14 * std::pow(c.diameter, 3)))
        throw GeometryError("degenerate cell " + std::to_string(id) + " (zero volume)");
    c.measure = volume;
    c.centroid = centroid / volume;
    c.normals.resize(nf);
    for (std::size_t k = 0; k < nf; ++k)
        c.normals[k] = orient[k] * mesh.faces[c.faces[k]].normal;
}

void link_face_cells(Mesh& mesh)
{
    for (auto& f : mesh.faces)
        f.cells.clear();
    for (std::size_t c = 0; c < mesh.cells.size(); ++c)
        for (auto f : mesh.cells[c].faces)
            mesh.faces[f].cells.push_back(c);
}

} // namespace

std::size_t Cell::local_index(std::size_t face) const
{
    for (std::size_t k = 0; k < faces.size(); ++k)
        if (faces[k] == face)
            return k;
    throw ContractViolation("face " + std::to_string(face) + " does not bound this cell");
}

std::size_t Mesh::num_interior_faces() const
{
    return static_cast<std::size_t>(
        std::count_if(faces.begin(), faces.end(), [](const Face& f) { return f.cells.size() == 2; }));
}

double Mesh::h() const
{
    double h = 0.0;
    for (const auto& c : cells)
        h = std::max(h, c.diameter);
    return h;
}

Mesh Mesh::from_polygons(std::vector<Point> vertices, const std::vector<std::vector<std::size_t>>& loops)
{
    Mesh mesh;
    mesh.dim = 2;
    mesh.vertices = std::move(vertices);
    std::map<EdgeKey, std::size_t> edge_id;
    mesh.cells.resize(loops.size());
    for (std::size_t c = 0; c < loops.size(); ++c) {
        auto loop = loops[c];
        if (loop.size() < 3)
            throw GeometryError("cell " + std::to_string(c) + " has fewer than 3 vertices");
        for (auto v : loop)
            if (v >= mesh.vertices.size())
                throw GeometryError("cell " + std::to_string(c) + " references unknown vertex " + std::to_string(v));
        if (signed_area_2d(mesh.vertices, loop) < 0.0)
            std::reverse(loop.begin(), loop.end());
        Cell& cell = mesh.cells[c];
        cell.vertices = loop;
        for (std::size_t k = 0; k < loop.size(); ++k) {
            const std::size_t a = loop[k], b = loop[(k + 1) % loop.size()];
            auto [it, inserted] = edge_id.try_emplace(edge_key(a, b), mesh.faces.size());
            if (inserted) {
                Face f;
                f.vertices = {a, b};
                mesh.faces.push_back(std::move(f));
            }
            cell.faces.push_back(it->second);
        }
    }
    link_face_cells(mesh);
    compute_geometry(mesh);
    return mesh;
}

Mesh Mesh::from_polygons(std::vector<Point> vertices,
                         const std::vector<std::vector<std::size_t>>& loops,
                         const std::vector<std::vector<std::size_t>>& edges)
{
    Mesh mesh;
    mesh.dim = 2;
    mesh.vertices = std::move(vertices);
    std::map<EdgeKey, std::size_t> edge_id;
    for (std::size_t e = 0; e < edges.size(); ++e) {
        if (edges[e].size() != 2)
            throw GeometryError("face " + std::to_string(e) + " in a 2D mesh must have 2 vertices");
        if (!edge_id.try_emplace(edge_key(edges[e][0], edges[e][1]), e).second)
            throw GeometryError("duplicate face " + std::to_string(e));
        Face f;
        f.vertices = edges[e];
        mesh.faces.push_back(std::move(f));
    }
    mesh.cells.resize(loops.size());
    for (std::size_t c = 0; c < loops.size(); ++c) {
        auto loop = loops[c];
        if (loop.size() < 3)
            throw GeometryError("cell " + std::to_string(c) + " has fewer than 3 vertices");
        if (signed_area_2d(mesh.vertices, loop) < 0.0)
            std::reverse(loop.begin(), loop.end());
        Cell& cell = mesh.cells[c];
        cell.vertices = loop;
        for (std::size_t k = 0; k < loop.size(); ++k) {
            auto it = edge_id.find(edge_key(loop[k], loop[(k + 1) % loop.size()]));
            if (it == edge_id.end())
                throw GeometryError("cell " + std::to_string(c) + " uses an edge missing from the face list");
            cell.faces.push_back(it->second);
        }
    }
    link_face_cells(mesh);
    compute_geometry(mesh);
    return mesh;
}

Mesh Mesh::from_polyhedra(std::vector<Point> vertices,
                          std::vector<std::vector<std::size_t>> faces,
                          std::vector<std::vector<std::size_t>> cells)
{
    Mesh mesh;
    mesh.dim = 3;
    mesh.vertices = std::move(vertices);
    mesh.faces.resize(faces.size());
    for (std::size_t f = 0; f < faces.size(); ++f) {
        for (auto v : faces[f])
            if (v >= mesh.vertices.size())
                throw GeometryError("face " + std::to_string(f) + " references unknown vertex " + std::to_string(v));
        mesh.faces[f].vertices = std::move(faces[f]);
    }
    mesh.cells.resize(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
        if (cells[c].size() < 4)
            throw GeometryError("cell " + std::to_string(c) + " has fewer than 4 faces");
        Cell& cell = mesh.cells[c];
        for (auto f : cells[c]) {
            if (f >= mesh.faces.size())
                throw GeometryError("cell " + std::to_string(c) + " references unknown face " + std::to_string(f));
            cell.vertices.insert(cell.vertices.end(), mesh.faces[f].vertices.begin(), mesh.faces[f].vertices.end());
        }
        std::sort(cell.vertices.begin(), cell.vertices.end());
        cell.vertices.erase(std::unique(cell.vertices.begin(), cell.vertices.end()), cell.vertices.end());
        cell.faces = std::move(cells[c]);
    }
    link_face_cells(mesh);
    compute_geometry(mesh);
    return mesh;
}

void compute_geometry(Mesh& mesh)
{
    for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
        if (mesh.dim == 2)
            fill_face_geometry_2d(mesh, mesh.faces[f], f);
        else
            fill_face_geometry_3d(mesh, mesh.faces[f], f);
    }
    for (std::size_t c = 0; c < mesh.cells.size(); ++c) {
        if (mesh.dim == 2)
            fill_cell_geometry_2d(mesh, mesh.cells[c], c);
        else
            fill_cell_geometry_3d(mesh, mesh.cells[c], c);
    }
    for (auto& f : mesh.faces) {
        if (f.cells.empty())
            continue;
        const Cell& t1 = mesh.cells[f.cells[0]];
        f.normal = t1.normals[t1.local_index(static_cast<std::size_t>(&f - mesh.faces.data()))];
    }
    for (auto& c : mesh.cells) {
        c.orientation.resize(c.faces.size());
        for (std::size_t k = 0; k < c.faces.size(); ++k)
            c.orientation[k] = c.normals[k].dot(mesh.faces[c.faces[k]].normal) >= 0.0 ? 1 : -1;
    }
}

ValidationReport validate_mesh(const Mesh& mesh)
{
    ValidationReport r;
    auto fail = [&r](const std::string& msg) {
        r.ok = false;
        r.failures.push_back(msg);
    };

    for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
        const Face& face = mesh.faces[f];
        if (face.cells.empty() || face.cells.size() > 2)
            fail("face " + std::to_string(f) + ": interior face with " + std::to_string(face.cells.size()) + " cells");
        if (!(face.measure > 0.0))
            fail("face " + std::to_string(f) + ": non-positive measure");
        if (face.cells.size() == 2) {
            const Cell& t1 = mesh.cells[face.cells[0]];
            const Cell& t2 = mesh.cells[face.cells[1]];
            if (t1.orientation[t1.local_index(f)] != 1)
                fail("face " + std::to_string(f) + ": orientation of T1 is not +1");
            if (t2.orientation[t2.local_index(f)] != -1)
                fail("face " + std::to_string(f) + ": orientation of T2 is not -1");
            const double mismatch = (t1.normals[t1.local_index(f)] + t2.normals[t2.local_index(f)]).norm();
            if (mismatch > 1e-12)
                fail("face " + std::to_string(f) + ": normals of T1 and T2 are not opposite");
        }
    }

    for (std::size_t c = 0; c < mesh.cells.size(); ++c) {
        const Cell& cell = mesh.cells[c];
        if (!(cell.measure > 0.0))
            fail("cell " + std::to_string(c) + ": non-positive measure");
        Vec closure = Vec::Zero();
        double perimeter = 0.0;
        double min_hf = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < cell.faces.size(); ++k) {
            const Face& face = mesh.faces[cell.faces[k]];
            const double defect = std::abs(cell.normals[k].norm() - 1.0);
            r.max_normal_defect = std::max(r.max_normal_defect, defect);
            if (defect > 1e-12)
                fail("cell " + std::to_string(c) + ": normal to face " + std::to_string(cell.faces[k]) + " is not unit");
            closure += face.measure * cell.normals[k];
            perimeter += face.measure;
            min_hf = std::min(min_hf, face.diameter);
            if (face.diameter > cell.diameter * (1.0 + 1e-12))
                fail("cell " + std::to_string(c) + ": h_F > h_T for face " + std::to_string(cell.faces[k]));
        }
        const double rel = closure.norm() / perimeter;
        r.max_closure_defect = std::max(r.max_closure_defect, rel);
        if (rel > 1e-12)
            fail("cell " + std::to_string(c) + ": closed-surface identity violated (" + std::to_string(rel) + ")");
        r.max_diameter_ratio = std::max(r.max_diameter_ratio, cell.diameter / min_hf);
        r.max_faces_per_cell = std::max(r.max_faces_per_cell, cell.faces.size());
    }
    return r;
}

} // namespace lohho
