#pragma once

// Versioned plain-text mesh dump for debugging; round-trips exactly
// (coordinates are written with 17 significant digits). Not a
// stability-guaranteed interchange format.

#include <iosfwd>
#include <string>

#include "wgband/geometry.hpp"

namespace wgband {

void write_mesh(std::ostream& os, const Mesh& mesh);
Mesh read_mesh(std::istream& is);

void save_mesh(const std::string& path, const Mesh& mesh);
Mesh load_mesh(const std::string& path);

}  // namespace wgband
