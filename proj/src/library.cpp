#include "rdf_forge/library.hpp"

#include "rdf_forge/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <set>

namespace rdf_forge::library {

namespace {

constexpr std::array kRobotTypes{"robotic arm", "end effector", "mobile robot", "linkage"};
constexpr std::array kStructures{"serial chain", "closed loop"};

template <std::size_t N>
bool one_of(const std::string& s, const std::array<const char*, N>& options) {
  return std::any_of(options.begin(), options.end(), [&](const char* o) { return s == o; });
}

std::string string_field(const nlohmann::json& j, const char* key, const std::string& where) {
  const auto it = j.find(key);
  if (it == j.end() || !it->is_string() || it->get<std::string>().empty()) {
    throw ParseError("missing or empty string field '" + std::string(key) + "'", where);
  }
  return it->get<std::string>();
}

}  // namespace

const Entry* Manifest::find(std::string_view id) const {
  for (const auto& e : entries) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

std::filesystem::path default_dir() {
  if (const char* env = std::getenv("RDF_FORGE_LIBRARY"); env && *env) return env;
  return RDF_FORGE_LIBRARY_DIR;
}

Manifest parse_manifest(std::string_view text, const std::filesystem::path& dir) {
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("manifest is not valid JSON: ") + e.what());
  }
  if (!root.is_object() || !root.contains("models") || !root["models"].is_array()) {
    throw ParseError("manifest must be an object with a 'models' array");
  }
  Manifest m;
  m.dir = dir;
  std::set<std::string> ids;
  for (std::size_t i = 0; i < root["models"].size(); ++i) {
    const auto& item = root["models"][i];
    const std::string where = "models[" + std::to_string(i) + "]";
    if (!item.is_object()) throw ParseError("entry must be an object", where);
    Entry e;
    e.id = string_field(item, "id", where);
    e.display_name = string_field(item, "name", where);
    e.robot_type = string_field(item, "type", where);
    e.structure = string_field(item, "structure", where);
    e.document = dir / string_field(item, "document", where);
    if (!one_of(e.robot_type, kRobotTypes)) throw ParseError("unknown robot type '" + e.robot_type + "'", where);
    if (!one_of(e.structure, kStructures)) throw ParseError("unknown structure '" + e.structure + "'", where);
    if (!ids.insert(e.id).second) throw ParseError("duplicate model id '" + e.id + "'", where);
    m.entries.push_back(std::move(e));
  }
  return m;
}

Manifest load_manifest(const std::filesystem::path& dir) {
  const auto path = dir / "manifest.json";
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read library manifest '" + path.string() + "'");
  const std::string text(std::istreambuf_iterator<char>(in), {});
  return parse_manifest(text, dir);
}

bool is_closed_loop(const Entry& e) { return e.structure == "closed loop"; }

std::string render_table(const Manifest& m) {
  const std::array<std::string, 4> header{"ID", "NAME", "TYPE", "STRUCTURE"};
  std::array<std::size_t, 4> width{};
  for (std::size_t c = 0; c < 4; ++c) width[c] = header[c].size();
  for (const auto& e : m.entries) {
    width[0] = std::max(width[0], e.id.size());
    width[1] = std::max(width[1], e.display_name.size());
    width[2] = std::max(width[2], e.robot_type.size());
  }
  auto row = [&](const std::array<std::string, 4>& cells) {
    std::string line;
    for (std::size_t c = 0; c < 4; ++c) {
      line += cells[c];
      if (c + 1 < 4) line += std::string(width[c] - cells[c].size() + 2, ' ');
    }
    return line + "\n";
  };
  std::string out = row(header);
  for (const auto& e : m.entries) out += row({e.id, e.display_name, e.robot_type, e.structure});
  return out;
}

}  // namespace rdf_forge::library
