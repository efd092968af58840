#include "lohho/quadrature.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace lohho {

namespace {

struct ReferenceRules {
    std::array<QuadratureRule, max_quadrature_degree + 1> segment, triangle, tetrahedron;
};

// Collapsed (Duffy) tensor-product rules: Gauss-Legendre in every direction,
// with the collapse Jacobian folded into the weights.
const ReferenceRules& reference_rules()
{
    static const ReferenceRules rules = [] {
        ReferenceRules r;
        for (int p = 0; p <= max_quadrature_degree; ++p) {
            r.segment[p] = gauss_legendre(p / 2 + 1);

            const auto g2 = gauss_legendre((p + 3) / 2);
            for (const auto& qu : g2)
                for (const auto& qv : g2) {
                    const double u = qu.x[0], v = qv.x[0];
                    r.triangle[p].push_back({Point(u, v * (1 - u), 0.0), qu.w * qv.w * (1 - u)});
                }

            const auto g3 = gauss_legendre((p + 4) / 2);
            for (const auto& qu : g3)
                for (const auto& qv : g3)
                    for (const auto& qw : g3) {
                        const double u = qu.x[0], v = qv.x[0], w = qw.x[0];
                        r.tetrahedron[p].push_back({Point(u, v * (1 - u), w * (1 - u) * (1 - v)),
                                                    qu.w * qv.w * qw.w * (1 - u) * (1 - u) * (1 - v)});
                    }
        }
        return r;
    }();
    return rules;
}

void check_degree(int degree)
{
    if (degree < 0 || degree > max_quadrature_degree)
        throw ContractViolation("quadrature degree " + std::to_string(degree) + " outside [0, "
                                + std::to_string(max_quadrature_degree) + "]");
}

void append_triangle(QuadratureRule& out, const Point& a, const Point& b, const Point& c, double jacobian,
                     int degree)
{
    for (const auto& q : reference_rules().triangle[degree])
        out.push_back({a + q.x[0] * (b - a) + q.x[1] * (c - a), q.w * jacobian});
}

void append_tetrahedron(QuadratureRule& out, const Point& a, const Point& b, const Point& c, const Point& d,
                        double jacobian, int degree)
{
    for (const auto& q : reference_rules().tetrahedron[degree])
        out.push_back({a + q.x[0] * (b - a) + q.x[1] * (c - a) + q.x[2] * (d - a), q.w * jacobian});
}

} // namespace

QuadratureRule gauss_legendre(int n)
{
    if (n < 1)
        throw ContractViolation("Gauss-Legendre rule needs at least one point");
    QuadratureRule rule(static_cast<std::size_t>(n));
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double pk = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            if (n == 1) {
                p1 = x;
                p0 = 1.0;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16)
                break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule[i] = {Point(0.5 * (1.0 - x), 0, 0), 0.5 * w};
        rule[n - 1 - i] = {Point(0.5 * (1.0 + x), 0, 0), 0.5 * w};
    }
    return rule;
}

QuadratureRule segment_rule(const Point& a, const Point& b, int degree)
{
    check_degree(degree);
    const double len = (b - a).norm();
    QuadratureRule out;
    for (const auto& q : reference_rules().segment[degree])
        out.push_back({a + q.x[0] * (b - a), q.w * len});
    return out;
}

QuadratureRule triangle_rule(const Point& a, const Point& b, const Point& c, int degree)
{
    check_degree(degree);
    QuadratureRule out;
    append_triangle(out, a, b, c, (b - a).cross(c - a).norm(), degree);
    return out;
}

QuadratureRule tetrahedron_rule(const Point& a, const Point& b, const Point& c, const Point& d, int degree)
{
    check_degree(degree);
    QuadratureRule out;
    append_tetrahedron(out, a, b, c, d, std::abs((b - a).dot((c - a).cross(d - a))), degree);
    return out;
}

QuadratureRule cell_quadrature(const Mesh& mesh, std::size_t cell, int degree)
{
    check_degree(degree);
    const Cell& T = mesh.cells[cell];
    QuadratureRule out;
    if (mesh.dim == 2) {
        const auto& loop = T.vertices;
        for (std::size_t k = 0; k < loop.size(); ++k) {
            const Point& a = mesh.vertices[loop[k]];
            const Point& b = mesh.vertices[loop[(k + 1) % loop.size()]];
            const double jac = (a - T.centroid).cross(b - T.centroid).z();
            append_triangle(out, T.centroid, a, b, jac, degree);
        }
        return out;
    }
    for (std::size_t k = 0; k < T.faces.size(); ++k) {
        const Face& F = mesh.faces[T.faces[k]];
        const auto& loop = F.vertices;
        auto corner = [&](std::size_t j) -> const Point& { return mesh.vertices[loop[j % loop.size()]]; };
        // +1 when the stored vertex loop runs counter-clockwise seen from outside T
        double turn = 0.0;
        for (std::size_t j = 0; j < loop.size(); ++j)
            turn += (corner(j) - F.centroid).cross(corner(j + 1) - F.centroid).dot(T.normals[k]);
        const double sign = turn >= 0.0 ? 1.0 : -1.0;
        for (std::size_t j = 0; j < loop.size(); ++j) {
            const Point& a = corner(j);
            const Point& b = corner(j + 1);
            const double jac = sign * (a - F.centroid).cross(b - F.centroid).dot(F.centroid - T.centroid);
            append_tetrahedron(out, T.centroid, F.centroid, a, b, jac, degree);
        }
    }
    return out;
}

QuadratureRule face_quadrature(const Mesh& mesh, std::size_t face, int degree)
{
    check_degree(degree);
    const Face& F = mesh.faces[face];
    if (mesh.dim == 2)
        return segment_rule(mesh.vertices[F.vertices[0]], mesh.vertices[F.vertices[1]], degree);
    QuadratureRule out;
    const auto& loop = F.vertices;
    for (std::size_t j = 0; j < loop.size(); ++j) {
        const Point& a = mesh.vertices[loop[j]];
        const Point& b = mesh.vertices[loop[(j + 1) % loop.size()]];
        const double jac = (a - F.centroid).cross(b - F.centroid).dot(F.normal);
        append_triangle(out, F.centroid, a, b, jac, degree);
    }
    // the loop may run against n_F; only the relative signs matter
    double total = 0.0;
    for (const auto& q : out)
        total += q.w;
    if (total < 0.0)
        for (auto& q : out)
            q.w = -q.w;
    return out;
}

} // namespace lohho
