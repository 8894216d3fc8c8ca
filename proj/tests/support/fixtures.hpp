#pragma once

// Conversions between library types and the oracle's plain matrices, plus
// small assembly documents shared by several test files.

#include "oracles.hpp"

#include "rdf_forge/assembly.hpp"
#include "rdf_forge/converter.hpp"
#include "rdf_forge/robot_model.hpp"

#include <fstream>
#include <string>

namespace fixtures {

using rdf_forge::spatial::Mat3;
using rdf_forge::spatial::Transform;
using rdf_forge::spatial::Vec3;

inline oracle::H to_h(const Transform& t) {
  oracle::H h = oracle::identity();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) h[i][j] = t.rotation()(i, j);
    h[i][3] = t.translation()(i);
  }
  return h;
}

inline Transform from_h(const oracle::H& h) {
  Mat3 r;
  Vec3 t;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) r(i, j) = h[i][j];
    t(i) = h[i][3];
  }
  return {r, t};
}

inline double max_diff(const oracle::H& a, const oracle::H& b) {
  double d = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 4; ++j) d = std::max(d, std::abs(a[i][j] - b[i][j]));
  }
  return d;
}

inline Mat3 rotation_of(const oracle::H& h) { return from_h(h).rotation(); }

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_file(const std::filesystem::path& p, const std::string& bytes) {
  std::filesystem::create_directories(p.parent_path());
  std::ofstream(p, std::ios::binary) << bytes;
}

/// Base at the origin, bob hanging 0.5 m below a revolute joint about y.
/// Explicit mass properties; meshes are referenced but never loaded.
inline std::string pendulum_json(bool with_meshes = true) {
  const std::string base_mesh = with_meshes ? R"(, "visual_mesh": "meshes/base.stl")" : "";
  const std::string bob_mesh = with_meshes ? R"(, "visual_mesh": "meshes/bob.stl")" : "";
  return R"({
  "name": "pendulum", "length_unit": "m", "grounded": "base",
  "components": [
    {"id": "base", "name": "base",
     "world_transform": {"rotation": [1,0,0, 0,1,0, 0,0,1], "translation": [0,0,0]},
     "phys": {"mass": 2.0, "com": [0,0,0], "inertia": [0.02,0.02,0.02,0,0,0]})" +
         base_mesh + R"(},
    {"id": "bob", "name": "bob",
     "world_transform": {"rotation": [1,0,0, 0,1,0, 0,0,1], "translation": [0,0,-0.5]},
     "phys": {"mass": 1.0, "com": [0,0,0], "inertia": [0.001,0.001,0.001,0,0,0]})" +
         bob_mesh + R"(}
  ],
  "joints": [
    {"id": "hinge", "name": "hinge", "kind": "revolute", "parent": "base", "child": "bob",
     "origin_world": {"rotation": [1,0,0, 0,1,0, 0,0,1], "translation": [0,0,0]},
     "axis_world": [0,1,0],
     "limits": {"lower": -3.14, "upper": 3.14, "effort": 10, "velocity": 2}}
  ]
})";
}

/// Writes pendulum.asm.json with unit-cube meshes into `dir`.
inline std::filesystem::path write_pendulum(const std::filesystem::path& dir) {
  const std::string cube = oracle::binary_stl(oracle::unit_cube_triangles());
  write_file(dir / "meshes" / "base.stl", cube);
  write_file(dir / "meshes" / "bob.stl", cube);
  const auto doc = dir / "pendulum.asm.json";
  write_file(doc, pendulum_json());
  return doc;
}

inline rdf_forge::convert::ByteReader fake_reader() {
  return [](const std::filesystem::path& p) { return "stl:" + p.filename().string(); };
}

inline std::filesystem::path library_dir() { return RDF_FORGE_LIBRARY_DIR; }

inline const std::vector<std::string>& library_ids() {
  static const std::vector<std::string> ids{"two_link_arm", "six_axis_arm", "four_bar", "parallel_gripper",
                                            "diff_drive"};
  return ids;
}

inline bool library_is_tree(const std::string& id) { return id != "four_bar" && id != "parallel_gripper"; }

inline std::vector<std::string> library_tree_ids() {
  std::vector<std::string> out;
  for (const auto& id : library_ids()) {
    if (library_is_tree(id)) out.push_back(id);
  }
  return out;
}

/// Converts a bundled model in memory (meshes are read from the library,
/// output bytes are not).
inline rdf_forge::convert::PipelineResult convert_library(const std::string& id, rdf_forge::convert::Format format,
                                                          rdf_forge::convert::Simulator simulator =
                                                              rdf_forge::convert::Simulator::none) {
  rdf_forge::convert::ConvertOptions opts;
  opts.format = format;
  opts.simulator = simulator;
  opts.out_dir = "out";
  return rdf_forge::convert::convert_document(
      rdf_forge::assembly::load_assembly(library_dir() / (id + ".asm.json")), opts,
      rdf_forge::assembly::stl_loader(), fake_reader());
}

}  // namespace fixtures
