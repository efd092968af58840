#pragma once

#include <vector>

#include "lohho/common.hpp"
#include "lohho/mesh.hpp"

namespace lohho {

struct QuadraturePoint {
    Point x;
    double w;
};

using QuadratureRule = std::vector<QuadraturePoint>;

inline constexpr int max_quadrature_degree = 30;

/// Gauss-Legendre rule with `n` points on [0,1] (abscissae in x[0]).
QuadratureRule gauss_legendre(int n);

/// Rules exact for polynomials of total degree `degree`, mapped onto the
/// given simplex. Weights sum to the (unsigned) simplex measure.
QuadratureRule segment_rule(const Point& a, const Point& b, int degree);
QuadratureRule triangle_rule(const Point& a, const Point& b, const Point& c, int degree);
QuadratureRule tetrahedron_rule(const Point& a, const Point& b, const Point& c, const Point& d, int degree);

/// Fan sub-simplices from the centroid. Sub-simplex weights carry the sign
/// of their orientation, so the rule integrates exactly over any simple
/// polytope, star-shaped or not.
QuadratureRule cell_quadrature(const Mesh& mesh, std::size_t cell, int degree);
QuadratureRule face_quadrature(const Mesh& mesh, std::size_t face, int degree);

template <typename F>
auto integrate(const QuadratureRule& rule, F&& f)
{
    auto acc = decltype(f(rule.front().x))(rule.front().w * f(rule.front().x));
    for (std::size_t q = 1; q < rule.size(); ++q)
        acc += rule[q].w * f(rule[q].x);
    return acc;
}

} // namespace lohho
