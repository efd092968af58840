#include "lohho/mesh_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <vector>

namespace lohho {

namespace {

enum class Section { none, dim, vertices, faces, cells };

std::vector<std::string> tokenize(const std::string& line)
{
    std::string body = line.substr(0, line.find('#'));
    std::istringstream ss(body);
    std::vector<std::string> tokens;
    for (std::string t; ss >> t;)
        tokens.push_back(t);
    return tokens;
}

double to_double(const std::string& s, std::size_t line)
{
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size())
            throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError("expected a number, got '" + s + "'", line);
    }
}

std::size_t to_index(const std::string& s, std::size_t line)
{
    try {
        std::size_t used = 0;
        const long long v = std::stoll(s, &used);
        if (used != s.size() || v < 0)
            throw std::invalid_argument(s);
        return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
        throw ParseError("expected a non-negative integer, got '" + s + "'", line);
    }
}

} // namespace

Mesh parse_mesh(std::istream& in)
{
    int dim = 0;
    std::vector<Point> vertices;
    std::vector<std::vector<std::size_t>> faces;
    std::vector<std::vector<std::size_t>> cells;
    bool have_faces = false;

    Section section = Section::none;
    std::size_t lineno = 0;
    for (std::string line; std::getline(in, line);) {
        ++lineno;
        auto tok = tokenize(line);
        if (tok.empty())
            continue;

        if (tok[0] == "DIM") {
            section = Section::dim;
            if (tok.size() == 2) {
                dim = static_cast<int>(to_index(tok[1], lineno));
                section = Section::none;
            } else if (tok.size() > 2) {
                throw ParseError("malformed DIM line", lineno);
            }
            continue;
        }
        if (tok[0] == "VERTICES" || tok[0] == "FACES" || tok[0] == "CELLS") {
            if (tok.size() != 1)
                throw ParseError("unexpected tokens after section header", lineno);
            if (dim != 2 && dim != 3)
                throw ParseError("DIM (2 or 3) must precede " + tok[0], lineno);
            section = tok[0] == "VERTICES" ? Section::vertices : tok[0] == "FACES" ? Section::faces : Section::cells;
            have_faces = have_faces || section == Section::faces;
            continue;
        }

        switch (section) {
        case Section::none: throw ParseError("data outside of a section", lineno);
        case Section::dim:
            if (tok.size() != 1)
                throw ParseError("malformed DIM value", lineno);
            dim = static_cast<int>(to_index(tok[0], lineno));
            section = Section::none;
            break;
        case Section::vertices: {
            if (tok.size() != static_cast<std::size_t>(dim) + 1)
                throw ParseError("vertex line needs an id and " + std::to_string(dim) + " coordinates", lineno);
            if (to_index(tok[0], lineno) != vertices.size())
                throw ParseError("vertex ids must be consecutive from 0", lineno);
            Point p = Point::Zero();
            for (int i = 0; i < dim; ++i)
                p[i] = to_double(tok[i + 1], lineno);
            vertices.push_back(p);
            break;
        }
        case Section::faces:
        case Section::cells: {
            auto& target = section == Section::faces ? faces : cells;
            if (tok.size() < 3)
                throw ParseError("entity line needs an id and at least two references", lineno);
            if (to_index(tok[0], lineno) != target.size())
                throw ParseError("ids must be consecutive from 0", lineno);
            std::vector<std::size_t> refs;
            for (std::size_t k = 1; k < tok.size(); ++k)
                refs.push_back(to_index(tok[k], lineno));
            target.push_back(std::move(refs));
            break;
        }
        }
    }
    if (section == Section::dim || (dim != 2 && dim != 3))
        throw ParseError("missing DIM", lineno);
    if (cells.empty())
        throw ParseError("no CELLS section", lineno);

    if (dim == 2)
        return have_faces ? Mesh::from_polygons(std::move(vertices), cells, faces)
                          : Mesh::from_polygons(std::move(vertices), cells);
    if (!have_faces)
        throw ParseError("3D meshes require a FACES section", lineno);
    return Mesh::from_polyhedra(std::move(vertices), std::move(faces), std::move(cells));
}

Mesh read_mesh(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open mesh file '" + path + "'", 0);
    return parse_mesh(in);
}

void write_mesh(std::ostream& out, const Mesh& mesh)
{
    out << std::setprecision(17);
    out << "DIM " << mesh.dim << "\nVERTICES\n";
    for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
        out << v;
        for (int i = 0; i < mesh.dim; ++i)
            out << ' ' << mesh.vertices[v][i];
        out << '\n';
    }
    out << "FACES\n";
    for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
        out << f;
        for (auto v : mesh.faces[f].vertices)
            out << ' ' << v;
        out << '\n';
    }
    out << "CELLS\n";
    for (std::size_t c = 0; c < mesh.cells.size(); ++c) {
        out << c;
        for (auto id : mesh.dim == 2 ? mesh.cells[c].vertices : mesh.cells[c].faces)
            out << ' ' << id;
        out << '\n';
    }
}

} // namespace lohho
