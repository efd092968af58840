#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lohho/assembly.hpp"
#include "lohho/common.hpp"
#include "lohho/mesh_families.hpp"

namespace lohho {

enum class Regularity { smooth, singular };

/// Manufactured problem: -div sigma(grad_s u) = f in the domain, u = g on
/// its boundary.
struct TestCase {
    std::string id;
    int dim = 2;
    MeshDomain domain = MeshDomain::unit_box;
    MaterialParams material;
    VectorFunction u;
    TensorFunction grad_u;
    VectorFunction f;
    /// Absent for homogeneous boundary conditions.
    std::optional<VectorFunction> g;
    Regularity regularity = Regularity::smooth;

    LoadData load() const { return {f, g}; }
};

/// Unit square, mu = 1: displacement with a (1+lambda)^-1 compressible part.
TestCase case_2d_quasi_incompressible(double lambda);
/// Re-entrant corner problem on the notched square, f = 0, g = u.
TestCase case_2d_singular();
/// Unit cube with u_i = sin(pi x1) sin(pi x2) sin(pi x3).
TestCase case_3d(double mu, double lambda);

/// Registry: "brenner2d", "singular2d", "cube3d". Overrides apply to the
/// material parameters of the cases that take them.
TestCase make_case(const std::string& id, std::optional<double> mu = std::nullopt,
                   std::optional<double> lambda = std::nullopt);
std::vector<std::string> case_ids();

} // namespace lohho
