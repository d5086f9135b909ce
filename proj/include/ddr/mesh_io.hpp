#pragma once

#include "ddr/mesh.hpp"

#include <iosfwd>
#include <string>

namespace ddr {

// Line-based text format; see the README for the grammar. Round-trips are
// byte-identical for meshes produced by assemble_mesh.
void write_mesh(const FittedMesh& mesh, std::ostream& out);
FittedMesh read_mesh(std::istream& in);

void write_mesh_file(const FittedMesh& mesh, const std::string& path);
FittedMesh read_mesh_file(const std::string& path);

}  // namespace ddr
