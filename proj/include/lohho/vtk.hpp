#pragma once

#include <iosfwd>
#include <string>

#include "lohho/fespace.hpp"

namespace lohho {

/// Legacy ASCII VTK unstructured grid: cell data u_T, point data the
/// reconstruction p_h averaged over the cells sharing each vertex.
void write_vtk(std::ostream& out, const Mesh& mesh, const DiscreteDisplacement& uh);
/// Throws std::runtime_error when `path` cannot be written.
void export_vtk(const DiscreteDisplacement& uh, const Mesh& mesh, const std::string& path);

} // namespace lohho
