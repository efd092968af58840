#include <cmath>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

#include "lohho/mesh_families.hpp"
#include "lohho/mesh_io.hpp"

using namespace lohho;

namespace {

bool has_failure(const ValidationReport& r, const std::string& needle)
{
    for (const auto& f : r.failures)
        if (f.find(needle) != std::string::npos)
            return true;
    return false;
}

std::vector<std::vector<std::size_t>> face_loops(const Mesh& m)
{
    std::vector<std::vector<std::size_t>> out;
    for (const auto& f : m.faces)
        out.push_back(f.vertices);
    return out;
}

std::vector<std::vector<std::size_t>> cell_faces(const Mesh& m)
{
    std::vector<std::vector<std::size_t>> out;
    for (const auto& c : m.cells)
        out.push_back(c.faces);
    return out;
}

} // namespace

TEST(Mesh, CartesianCounts)
{
    const Mesh m = cartesian_mesh_2d(4);
    EXPECT_EQ(m.num_cells(), 16u);
    EXPECT_EQ(m.num_interior_faces(), 24u);
    EXPECT_EQ(m.num_boundary_faces(), 16u);
    EXPECT_TRUE(validate_mesh(m).ok);
}

TEST(Mesh, TriangularCounts)
{
    const Mesh m = structured_triangular_mesh(4);
    EXPECT_EQ(m.num_cells(), 32u);
    EXPECT_EQ(m.num_interior_faces(), 40u);
    EXPECT_EQ(m.num_boundary_faces(), 16u);
    EXPECT_TRUE(validate_mesh(m).ok);
}

TEST(Mesh, CubeCounts)
{
    const Mesh m = cartesian_mesh_3d(2);
    EXPECT_EQ(m.num_cells(), 8u);
    EXPECT_EQ(m.num_interior_faces(), 12u);
    EXPECT_EQ(m.num_boundary_faces(), 24u);
    EXPECT_TRUE(validate_mesh(m).ok);

    const Mesh t = cube_to_tet_mesh(2);
    EXPECT_EQ(t.num_cells(), 48u);
    EXPECT_TRUE(validate_mesh(t).ok);
}

TEST(Mesh, OtherFamiliesValidate)
{
    EXPECT_TRUE(validate_mesh(distorted_quadrangular_mesh(8)).ok);
    for (bool tri : {false, true}) {
        const Mesh m = notched_square_mesh(4, tri);
        EXPECT_TRUE(validate_mesh(m).ok);
        double area = 0.0;
        for (const auto& c : m.cells)
            area += c.measure;
        EXPECT_NEAR(area, 3.0, 1e-13);
    }
}

TEST(Mesh, UnitSquareGeometry)
{
    const Mesh m = cartesian_mesh_2d(1);
    const Cell& c = m.cells[0];
    EXPECT_NEAR(c.measure, 1.0, 1e-15);
    EXPECT_NEAR(c.diameter, std::numbers::sqrt2, 1e-15);
    EXPECT_LT((c.centroid - Point(0.5, 0.5, 0)).norm(), 1e-15);
    Vec closure = Vec::Zero();
    for (std::size_t k = 0; k < c.faces.size(); ++k) {
        const Face& f = m.faces[c.faces[k]];
        EXPECT_NEAR(f.measure, 1.0, 1e-15);
        EXPECT_NEAR(c.normals[k].norm(), 1.0, 1e-15);
        // Outward: points from the cell centroid towards the face.
        EXPECT_GT(c.normals[k].dot(f.centroid - c.centroid), 0.0);
        closure += f.measure * c.normals[k];
    }
    EXPECT_LT(closure.norm(), 1e-15);
}

TEST(Mesh, TriangleGeometry)
{
    const Mesh m = Mesh::from_polygons({Point(0, 0, 0), Point(1, 0, 0), Point(0, 1, 0)}, {{0, 2, 1}});
    const Cell& c = m.cells[0];
    EXPECT_NEAR(c.measure, 0.5, 1e-15);
    EXPECT_LT((c.centroid - Point(1.0 / 3, 1.0 / 3, 0)).norm(), 1e-15);
    EXPECT_NEAR(c.diameter, std::numbers::sqrt2, 1e-15);
    for (std::size_t k = 0; k < 3; ++k) {
        const Face& f = m.faces[c.faces[k]];
        if (std::abs(f.centroid.x() - 0.5) < 1e-15 && std::abs(f.centroid.y() - 0.5) < 1e-15) {
            EXPECT_LT((c.normals[k] - Vec(1, 1, 0) / std::numbers::sqrt2).norm(), 1e-15);
            EXPECT_NEAR(f.measure, std::numbers::sqrt2, 1e-15);
        }
    }
}

TEST(Mesh, UnitCubeGeometry)
{
    const Mesh m = cartesian_mesh_3d(1);
    const Cell& c = m.cells[0];
    EXPECT_NEAR(c.measure, 1.0, 1e-15);
    EXPECT_NEAR(c.diameter, std::sqrt(3.0), 1e-15);
    EXPECT_LT((c.centroid - Point(0.5, 0.5, 0.5)).norm(), 1e-15);
    EXPECT_EQ(c.faces.size(), 6u);
    for (std::size_t k = 0; k < 6; ++k) {
        const Face& f = m.faces[c.faces[k]];
        EXPECT_NEAR(f.measure, 1.0, 1e-15);
        EXPECT_NEAR(f.diameter, std::numbers::sqrt2, 1e-15);
        EXPECT_LT((c.normals[k] - 2.0 * (f.centroid - c.centroid)).norm(), 1e-15);
    }
}

TEST(Mesh, HalvesUnderRefinement)
{
    for (int n : {2, 4, 8}) {
        EXPECT_NEAR(cartesian_mesh_2d(2 * n).h(), cartesian_mesh_2d(n).h() / 2, 1e-15);
        EXPECT_NEAR(structured_triangular_mesh(2 * n).h(), structured_triangular_mesh(n).h() / 2, 1e-15);
        EXPECT_NEAR(cartesian_mesh_3d(2 * n).h(), cartesian_mesh_3d(n).h() / 2, 1e-15);
    }
    EXPECT_NEAR(cartesian_mesh_2d(4).h(), std::numbers::sqrt2 / 4, 1e-15);
}

TEST(Mesh, OrientationConvention)
{
    for (const Mesh& m : {structured_triangular_mesh(3), cube_to_tet_mesh(2), notched_square_mesh(2, false)}) {
        for (std::size_t f = 0; f < m.num_faces(); ++f) {
            const Face& face = m.faces[f];
            const Cell& t1 = m.cells[face.cells[0]];
            EXPECT_EQ(t1.orientation[t1.local_index(f)], 1);
            EXPECT_LT((face.normal - t1.normals[t1.local_index(f)]).norm(), 1e-15);
            if (face.cells.size() == 2) {
                EXPECT_LT(face.cells[0], face.cells[1]);
                const Cell& t2 = m.cells[face.cells[1]];
                EXPECT_EQ(t2.orientation[t2.local_index(f)], -1);
            }
        }
    }
}

TEST(Mesh, ConstructionIsDeterministic)
{
    const Mesh a = cube_to_tet_mesh(3), b = cube_to_tet_mesh(3);
    ASSERT_EQ(a.num_faces(), b.num_faces());
    for (std::size_t f = 0; f < a.num_faces(); ++f) {
        EXPECT_EQ(a.faces[f].vertices, b.faces[f].vertices);
        EXPECT_EQ(a.faces[f].cells, b.faces[f].cells);
        EXPECT_EQ(a.faces[f].measure, b.faces[f].measure);
    }
}

TEST(Mesh, ValidationRejectsThreeCellFace)
{
    const Mesh m = Mesh::from_polygons(
        {Point(0, 0, 0), Point(1, 0, 0), Point(0.5, 1, 0), Point(0.5, -1, 0), Point(0.5, 2, 0)},
        {{0, 1, 2}, {0, 1, 3}, {0, 1, 4}});
    const auto r = validate_mesh(m);
    EXPECT_FALSE(r.ok);
    EXPECT_TRUE(has_failure(r, "interior face with 3 cells"));
}

TEST(Mesh, ValidationDetectsFlippedNormal)
{
    Mesh m = cartesian_mesh_2d(2);
    m.cells[0].normals[0] = -m.cells[0].normals[0];
    const auto r = validate_mesh(m);
    EXPECT_FALSE(r.ok);
    EXPECT_TRUE(has_failure(r, "closed-surface identity violated"));
    EXPECT_GT(r.max_closure_defect, 0.1);
}

TEST(Mesh, NonPlanarFaceRejected)
{
    const Mesh cube = cartesian_mesh_3d(1);
    auto vertices = cube.vertices;
    for (auto& v : vertices)
        if ((v - Point(1, 1, 1)).norm() < 1e-12)
            v = Point(1.0, 1.0, 1.2);
    EXPECT_THROW(Mesh::from_polyhedra(vertices, face_loops(cube), cell_faces(cube)), GeometryError);
}

TEST(Mesh, DegenerateCellRejected)
{
    EXPECT_THROW(Mesh::from_polygons({Point(0, 0, 0), Point(1, 0, 0), Point(2, 0, 0)}, {{0, 1, 2}}), GeometryError);
}

TEST(MeshIo, RoundTrip)
{
    for (const Mesh& m : {distorted_quadrangular_mesh(3), cube_to_tet_mesh(2)}) {
        std::stringstream s;
        write_mesh(s, m);
        const Mesh r = parse_mesh(s);
        ASSERT_EQ(r.num_cells(), m.num_cells());
        ASSERT_EQ(r.num_faces(), m.num_faces());
        for (std::size_t c = 0; c < m.num_cells(); ++c) {
            EXPECT_EQ(r.cells[c].faces, m.cells[c].faces);
            EXPECT_EQ(r.cells[c].measure, m.cells[c].measure);
        }
    }
}

TEST(MeshIo, ParsesCommentsAndSplitDim)
{
    std::istringstream in("# square\nDIM\n2\nVERTICES\n0 0 0\n1 1 0 # corner\n2 1 1\n3 0 1\nCELLS\n0 0 1 2 3\n");
    const Mesh m = parse_mesh(in);
    EXPECT_EQ(m.num_cells(), 1u);
    EXPECT_NEAR(m.cells[0].measure, 1.0, 1e-15);
}

TEST(MeshIo, ParseErrorReportsLine)
{
    std::istringstream in("DIM 2\nVERTICES\n0 0 0\n1 x 0\n");
    try {
        parse_mesh(in);
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 4u);
    }
}

TEST(MeshIo, ThreeDimensionsNeedFaces)
{
    std::istringstream in("DIM 3\nVERTICES\n0 0 0 0\nCELLS\n0 0 1 2 3\n");
    EXPECT_THROW(parse_mesh(in), ParseError);
}

TEST(MeshFamilies, SpecValidation)
{
    MeshFamilySpec spec;
    spec.n = 0;
    EXPECT_THROW(spec.validate(), ConfigError);
    spec.n = 2;
    spec.family = MeshFamily::cube_to_tet;
    EXPECT_THROW(spec.validate(), ConfigError);
    spec.dim = 3;
    EXPECT_NO_THROW(spec.validate());
    EXPECT_THROW(parse_family("hexagonal"), ConfigError);
    EXPECT_EQ(parse_family("triangular"), MeshFamily::structured_triangular);
}
