#pragma once

#include <string>

#include "lohho/mesh.hpp"

namespace lohho {

enum class MeshFamily {
    cartesian,
    structured_triangular,
    distorted_quadrangular,
    cube_to_tet,
    file,
};

enum class MeshDomain {
    unit_box,      // (0,1)^d
    notched_square // three unit squares around the re-entrant corner at the origin
};

struct MeshFamilySpec {
    MeshFamily family = MeshFamily::cartesian;
    int dim = 2;
    int n = 1;
    MeshDomain domain = MeshDomain::unit_box;
    std::string path;

    void validate() const;
};

MeshFamily parse_family(const std::string& name);
std::string to_string(MeshFamily family);
MeshDomain parse_domain(const std::string& name);

Mesh build_mesh(const MeshFamilySpec& spec);

Mesh cartesian_mesh_2d(int n);
Mesh cartesian_mesh_3d(int n);
Mesh structured_triangular_mesh(int n);
Mesh distorted_quadrangular_mesh(int n);
Mesh cube_to_tet_mesh(int n);
/// Polygon with corners (sqrt2,0), (0,sqrt2), (-sqrt2/2,sqrt2/2), (0,0),
/// (-sqrt2/2,-sqrt2/2), (0,-sqrt2), split into three unit squares each
/// carrying an n x n grid (quadrangles) or its diagonal split (triangles).
Mesh notched_square_mesh(int n, bool triangles);

} // namespace lohho
