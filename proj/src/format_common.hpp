#pragma once

// Helpers shared by the URDF and SDF readers/writers.

#include "rdf_forge/errors.hpp"
#include "rdf_forge/format_io.hpp"
#include "rdf_forge/number_format.hpp"
#include "rdf_forge/xml.hpp"

#include <set>

namespace rdf_forge::format::detail {

inline std::string vec_text(const spatial::Vec3& v) { return format_numbers({v.x(), v.y(), v.z()}); }

inline std::string rpy_text(const spatial::Mat3& r) {
  const auto rpy = spatial::rot_to_rpy(r);
  return format_numbers({rpy.roll, rpy.pitch, rpy.yaw});
}

inline spatial::Transform pose_from(const spatial::Vec3& xyz, const spatial::Vec3& rpy) {
  return {spatial::rpy_to_rot({rpy.x(), rpy.y(), rpy.z()}), xyz};
}

inline std::string mesh_filename(const std::string& filename, const std::string& model_name,
                                 const EmitOptions& opts) {
  if (opts.mesh_path_style != MeshPathStyle::model_uri) return filename;
  if (filename.find("://") != std::string::npos || (!filename.empty() && filename.front() == '/')) {
    return filename;
  }
  return "model://" + model_name + "/" + filename;
}

[[noreturn]] inline void fail_at(const xml::Element& e, const std::string& message) {
  throw ParseError(message, e.location());
}

inline const std::string& required_attribute(const xml::Element& e, std::string_view key) {
  const auto* v = e.attribute(key);
  if (!v) fail_at(e, "<" + e.name + "> is missing attribute '" + std::string(key) + "'");
  return *v;
}

inline double number_attribute(const xml::Element& e, std::string_view key, std::optional<double> fallback) {
  const auto* v = e.attribute(key);
  if (!v) {
    if (fallback) return *fallback;
    fail_at(e, "<" + e.name + "> is missing attribute '" + std::string(key) + "'");
  }
  const auto n = parse_number(*v);
  if (!n) fail_at(e, "attribute '" + std::string(key) + "' is not a number: '" + *v + "'");
  return *n;
}

inline std::vector<double> number_list(const xml::Element& e, const std::string& text, std::size_t count,
                                       const std::string& what) {
  const auto v = parse_numbers(text);
  if (!v || v->size() != count) {
    fail_at(e, what + " must hold " + std::to_string(count) + " numbers, got '" + text + "'");
  }
  return *v;
}

inline spatial::Vec3 vec_attribute(const xml::Element& e, std::string_view key, const spatial::Vec3& fallback) {
  const auto* v = e.attribute(key);
  if (!v) return fallback;
  const auto n = number_list(e, *v, 3, "attribute '" + std::string(key) + "'");
  return {n[0], n[1], n[2]};
}

inline void warn(Warnings* warnings, const xml::Element& e, const std::string& context) {
  if (warnings) warnings->push_back(e.location() + ": ignored <" + e.name + "> in " + context);
}

/// Registers a name, failing on duplicates.
inline void claim(std::set<std::string>& names, const std::string& name, const xml::Element& e,
                  const std::string& kind) {
  if (name.empty()) fail_at(e, kind + " name must not be empty");
  if (!names.insert(name).second) fail_at(e, "duplicate " + kind + " name '" + name + "'");
}

}  // namespace rdf_forge::format::detail
