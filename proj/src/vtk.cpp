#include "lohho/vtk.hpp"

#include <fstream>
#include <ostream>
#include <stdexcept>

namespace lohho {

namespace {

int vtk_cell_type(const Mesh& mesh, const Cell& T)
{
    if (mesh.dim == 2)
        return T.vertices.size() == 3 ? 5 : T.vertices.size() == 4 ? 9 : 7;
    return T.vertices.size() == 4 && T.faces.size() == 4 ? 10 : 42;
}

} // namespace

void write_vtk(std::ostream& out, const Mesh& mesh, const DiscreteDisplacement& uh)
{
    out.precision(16);
    out << "# vtk DataFile Version 3.0\nlohho displacement\nASCII\nDATASET UNSTRUCTURED_GRID\n";
    out << "POINTS " << mesh.vertices.size() << " double\n";
    for (const auto& v : mesh.vertices)
        out << v[0] << ' ' << v[1] << ' ' << v[2] << '\n';

    std::vector<std::vector<std::size_t>> connectivity(mesh.num_cells());
    std::size_t total = 0;
    for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
        const Cell& T = mesh.cells[c];
        auto& conn = connectivity[c];
        if (vtk_cell_type(mesh, T) == 42) {
            // face stream: n_faces, then (n_pts, ids...) per face
            conn.push_back(T.faces.size());
            for (auto f : T.faces) {
                conn.push_back(mesh.faces[f].vertices.size());
                conn.insert(conn.end(), mesh.faces[f].vertices.begin(), mesh.faces[f].vertices.end());
            }
        } else {
            conn = T.vertices;
        }
        total += conn.size() + 1;
    }
    out << "CELLS " << mesh.num_cells() << ' ' << total << '\n';
    for (const auto& conn : connectivity) {
        out << conn.size();
        for (auto id : conn)
            out << ' ' << id;
        out << '\n';
    }
    out << "CELL_TYPES " << mesh.num_cells() << '\n';
    for (const auto& T : mesh.cells)
        out << vtk_cell_type(mesh, T) << '\n';

    out << "CELL_DATA " << mesh.num_cells() << "\nVECTORS u_T double\n";
    for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
        const Vec u = uh.cell(c);
        out << u[0] << ' ' << u[1] << ' ' << u[2] << '\n';
    }

    const auto p = reconstruct_all(mesh, uh);
    std::vector<Vec> sum(mesh.vertices.size(), Vec::Zero());
    std::vector<int> count(mesh.vertices.size(), 0);
    for (std::size_t c = 0; c < mesh.num_cells(); ++c)
        for (auto v : mesh.cells[c].vertices) {
            sum[v] += p[c](mesh.vertices[v]);
            ++count[v];
        }
    out << "POINT_DATA " << mesh.vertices.size() << "\nVECTORS p_h double\n";
    for (std::size_t v = 0; v < sum.size(); ++v) {
        const Vec a = count[v] ? Vec(sum[v] / count[v]) : Vec(Vec::Zero());
        out << a[0] << ' ' << a[1] << ' ' << a[2] << '\n';
    }
}

void export_vtk(const DiscreteDisplacement& uh, const Mesh& mesh, const std::string& path)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    write_vtk(out, mesh, uh);
    if (!out)
        throw std::runtime_error("error while writing '" + path + "'");
}

} // namespace lohho
