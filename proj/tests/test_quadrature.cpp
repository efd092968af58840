#include <cmath>

#include <gtest/gtest.h>

#include "lohho/mesh_families.hpp"
#include "lohho/quadrature.hpp"

using namespace lohho;

namespace {

double factorial(int n) { return std::tgamma(n + 1.0); }

// Integral of x^a y^b over the reference triangle {x, y >= 0, x + y <= 1}.
double reference_triangle_moment(int a, int b) { return factorial(a) * factorial(b) / factorial(a + b + 2); }

double reference_tet_moment(int a, int b, int c)
{
    return factorial(a) * factorial(b) * factorial(c) / factorial(a + b + c + 3);
}

double monomial(const Point& x, int a, int b, int c = 0)
{
    return std::pow(x[0], a) * std::pow(x[1], b) * std::pow(x[2], c);
}

} // namespace

TEST(Quadrature, GaussLegendreWeightsSumToOne)
{
    for (int n = 1; n <= 12; ++n) {
        double s = 0.0;
        for (const auto& q : gauss_legendre(n))
            s += q.w;
        EXPECT_NEAR(s, 1.0, 1e-14) << n;
    }
}

TEST(Quadrature, SegmentExactness)
{
    const Point a(0.5, 0.0, 0.0), b(2.0, 0.0, 0.0);
    for (int deg = 0; deg <= 12; ++deg) {
        const auto rule = segment_rule(a, b, deg);
        for (int k = 0; k <= deg; ++k) {
            const double got = integrate(rule, [&](const Point& x) { return std::pow(x[0], k); });
            const double want = (std::pow(2.0, k + 1) - std::pow(0.5, k + 1)) / (k + 1);
            EXPECT_NEAR(got, want, 1e-12 * std::max(1.0, std::abs(want))) << deg << " " << k;
        }
    }
}

TEST(Quadrature, TriangleExactness)
{
    const Point a(0, 0, 0), b(1, 0, 0), c(0, 1, 0);
    for (int deg = 0; deg <= 10; ++deg) {
        const auto rule = triangle_rule(a, b, c, deg);
        for (int i = 0; i <= deg; ++i)
            for (int j = 0; i + j <= deg; ++j) {
                const double got = integrate(rule, [&](const Point& x) { return monomial(x, i, j); });
                EXPECT_NEAR(got, reference_triangle_moment(i, j), 1e-14) << deg << " " << i << " " << j;
            }
    }
}

TEST(Quadrature, TriangleWeightsAreUnsignedMeasure)
{
    // Clockwise ordering must not flip the sign.
    const auto rule = triangle_rule(Point(0, 0, 0), Point(0, 2, 0), Point(3, 0, 0), 4);
    EXPECT_NEAR(integrate(rule, [](const Point&) { return 1.0; }), 3.0, 1e-14);
}

TEST(Quadrature, TetrahedronExactness)
{
    const Point a(0, 0, 0), b(1, 0, 0), c(0, 1, 0), d(0, 0, 1);
    for (int deg = 0; deg <= 8; ++deg) {
        const auto rule = tetrahedron_rule(a, b, c, d, deg);
        for (int i = 0; i <= deg; ++i)
            for (int j = 0; i + j <= deg; ++j)
                for (int k = 0; i + j + k <= deg; ++k) {
                    const double got = integrate(rule, [&](const Point& x) { return monomial(x, i, j, k); });
                    EXPECT_NEAR(got, reference_tet_moment(i, j, k), 1e-14) << deg << " " << i << j << k;
                }
    }
}

TEST(Quadrature, PolygonCellExactness)
{
    const Mesh mesh = cartesian_mesh_2d(1);
    for (int i = 0; i <= 6; ++i)
        for (int j = 0; i + j <= 6; ++j) {
            const double got = integrate(cell_quadrature(mesh, 0, 6), [&](const Point& x) { return monomial(x, i, j); });
            EXPECT_NEAR(got, 1.0 / ((i + 1) * (j + 1)), 1e-14);
        }
}

TEST(Quadrature, NonConvexPolygon)
{
    // L-shape [0,2]x[0,1] union [0,1]x[1,2].
    const Mesh mesh = Mesh::from_polygons(
        {Point(0, 0, 0), Point(2, 0, 0), Point(2, 1, 0), Point(1, 1, 0), Point(1, 2, 0), Point(0, 2, 0)},
        {{0, 1, 2, 3, 4, 5}});
    const auto rule = cell_quadrature(mesh, 0, 4);
    EXPECT_NEAR(integrate(rule, [](const Point&) { return 1.0; }), 3.0, 1e-14);
    EXPECT_NEAR(integrate(rule, [](const Point& x) { return x[0] * x[0]; }), 3.0, 1e-13);
    EXPECT_NEAR(integrate(rule, [](const Point& x) { return x[0] * x[1]; }), 0.5 * 2.0 + 0.25 * 3.0, 1e-13);
    EXPECT_NEAR(mesh.cells[0].measure, 3.0, 1e-14);
    EXPECT_NEAR(mesh.cells[0].centroid.x(), 5.0 / 6.0, 1e-14);
    EXPECT_NEAR(mesh.cells[0].centroid.y(), 5.0 / 6.0, 1e-14);
}

TEST(Quadrature, PolyhedronCellExactness)
{
    const Mesh mesh = cartesian_mesh_3d(1);
    for (int i = 0; i <= 4; ++i)
        for (int j = 0; i + j <= 4; ++j)
            for (int k = 0; i + j + k <= 4; ++k) {
                const double got
                    = integrate(cell_quadrature(mesh, 0, 4), [&](const Point& x) { return monomial(x, i, j, k); });
                EXPECT_NEAR(got, 1.0 / ((i + 1) * (j + 1) * (k + 1)), 1e-14);
            }
}

TEST(Quadrature, FaceRulesIntegrateFaceMeasure)
{
    const Mesh mesh = cube_to_tet_mesh(2);
    for (std::size_t f = 0; f < mesh.num_faces(); ++f) {
        const auto rule = face_quadrature(mesh, f, 3);
        EXPECT_NEAR(integrate(rule, [](const Point&) { return 1.0; }), mesh.faces[f].measure, 1e-14);
        const Vec c = integrate(rule, [](const Point& x) -> Vec { return x; }) / mesh.faces[f].measure;
        EXPECT_LT((c - mesh.faces[f].centroid).norm(), 1e-14);
    }
}
