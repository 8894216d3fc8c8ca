#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace rdf_forge::library {

struct Entry {
  std::string id;
  std::string display_name;
  std::string robot_type;  ///< robotic arm | end effector | mobile robot | linkage
  std::string structure;   ///< serial chain | closed loop
  std::filesystem::path document;  ///< absolute
};

struct Manifest {
  std::filesystem::path dir;
  std::vector<Entry> entries;

  const Entry* find(std::string_view id) const;
};

/// RDF_FORGE_LIBRARY if set, else the directory bundled at build time.
std::filesystem::path default_dir();

/// Reads <dir>/manifest.json. Throws ParseError for malformed manifests,
/// duplicate ids or unknown robot types/structures.
Manifest load_manifest(const std::filesystem::path& dir = default_dir());
Manifest parse_manifest(std::string_view text, const std::filesystem::path& dir);

bool is_closed_loop(const Entry& e);

/// Aligned table: id, name, type, structure.
std::string render_table(const Manifest& m);

}  // namespace rdf_forge::library
