#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "lohho/common.hpp"

namespace lohho {

struct Face {
    /// 2D: the two end points; 3D: the vertex loop.
    std::vector<std::size_t> vertices;
    /// Incident cells in increasing index order; cells[0] is T_1.
    std::vector<std::size_t> cells;

    double measure = 0.0;
    double diameter = 0.0;
    Point centroid = Point::Zero();
    /// n_F := n_{T_1 F}.
    Vec normal = Vec::Zero();

    bool is_boundary() const { return cells.size() == 1; }
};

struct Cell {
    std::vector<std::size_t> faces;
    /// Outward unit normal n_TF, one per entry of `faces`.
    std::vector<Vec> normals;
    /// epsilon_TF = n_TF . n_F, one per entry of `faces`.
    std::vector<int> orientation;
    /// 2D: counter-clockwise vertex loop; 3D: sorted unique vertex ids.
    std::vector<std::size_t> vertices;

    double measure = 0.0;
    double diameter = 0.0;
    Point centroid = Point::Zero();

    std::size_t local_index(std::size_t face) const;
};

/// Polygonal (2D) or polyhedral (3D) mesh with its geometry cache.
/// Built once by one of the factory functions below and treated as
/// immutable afterwards.
struct Mesh {
    int dim = 2;
    std::vector<Point> vertices;
    std::vector<Face> faces;
    std::vector<Cell> cells;

    std::size_t num_cells() const { return cells.size(); }
    std::size_t num_faces() const { return faces.size(); }
    std::size_t num_interior_faces() const;
    std::size_t num_boundary_faces() const { return num_faces() - num_interior_faces(); }

    /// Mesh size h = max_T h_T.
    double h() const;

    /// 2D constructor: each cell is a closed vertex loop (either orientation);
    /// edges are deduplicated in order of first appearance.
    static Mesh from_polygons(std::vector<Point> vertices,
                              const std::vector<std::vector<std::size_t>>& loops);

    /// 2D constructor with a prescribed face (edge) list; every loop edge must
    /// be one of `edges`.
    static Mesh from_polygons(std::vector<Point> vertices,
                              const std::vector<std::vector<std::size_t>>& loops,
                              const std::vector<std::vector<std::size_t>>& edges);

    /// 3D constructor: planar faces given as vertex loops, cells as face-id lists.
    static Mesh from_polyhedra(std::vector<Point> vertices,
                               std::vector<std::vector<std::size_t>> faces,
                               std::vector<std::vector<std::size_t>> cells);
};

/// Fills measures, centroids, diameters and normals. Connectivity (face
/// vertices, cell faces, face cells) must be in place.
void compute_geometry(Mesh& mesh);

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> failures;

    double max_normal_defect = 0.0;   // max | |n_TF| - 1 |
    double max_closure_defect = 0.0;  // max |sum_F |F| n_TF| / sum_F |F|
    double max_diameter_ratio = 0.0;  // max_T h_T / min_F h_F
    std::size_t max_faces_per_cell = 0;
};

ValidationReport validate_mesh(const Mesh& mesh);

} // namespace lohho
