#pragma once

#include <iosfwd>
#include <string>

#include "lohho/mesh.hpp"

namespace lohho {

// Plain-text mesh format, one entity per line, '#' starts a comment:
//
//   DIM 2                 (or DIM on its own line followed by the value)
//   VERTICES
//   <id> <x> <y> [<z>]
//   FACES                 (required in 3D, optional in 2D)
//   <id> <v0> <v1> [...]
//   CELLS
//   <id> <v0> <v1> ...    (2D: vertex loop)
//   <id> <f0> <f1> ...    (3D: face ids)
//
// Ids are 0-based and must be listed in order.

Mesh parse_mesh(std::istream& in);
Mesh read_mesh(const std::string& path);
void write_mesh(std::ostream& out, const Mesh& mesh);

} // namespace lohho
