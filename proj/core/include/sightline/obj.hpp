#pragma once

#include <filesystem>
#include <iosfwd>

#include "sightline/geometry.hpp"

namespace sightline {

struct ObjImport {
  TriMesh mesh;
  std::size_t dropped_degenerate{0};
};

/// Reads the Wavefront OBJ subset used for vehicle meshes: `v x y z` and
/// `f a b c ...` with 1-based indices (`a/b/c` forms take the position index).
/// N-gon faces are fan-triangulated; every other directive is ignored.
/// Degenerate triangles are dropped and counted.
ObjImport read_obj(std::istream& in, Owner owner = Owner::Target);
ObjImport read_obj_file(const std::filesystem::path& path, Owner owner = Owner::Target);

void write_obj(std::ostream& out, const TriMesh& mesh);

}  // namespace sightline
