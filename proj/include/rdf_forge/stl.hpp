#pragma once

#include "rdf_forge/mesh.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace rdf_forge::mesh {

enum class StlMode { ascii, binary };

/// Parses ASCII or binary STL, detected from content. A buffer whose size
/// equals 84 + 50·count for its own declared count is binary; otherwise a
/// buffer that starts with `solid` is ASCII.
TriMesh parse_stl(std::string_view bytes);
TriMesh load_stl(const std::filesystem::path& path);

/// Binary output stores coordinates as 32-bit floats, ASCII output uses the
/// shortest decimal that reads back to the same double.
std::string write_stl(const TriMesh& mesh, StlMode mode, std::string_view solid_name = "mesh");
void save_stl(const TriMesh& mesh, const std::filesystem::path& path, StlMode mode);

}  // namespace rdf_forge::mesh
