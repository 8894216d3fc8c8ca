// Regenerates the bundled model library: STL meshes (millimetres) and the
// assembly documents that reference them.
//
//   gen_library <library dir>

#include "rdf_forge/mesh.hpp"
#include "rdf_forge/stl.hpp"

#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using rdf_forge::spatial::Mat3;
using rdf_forge::spatial::Vec3;
namespace mesh = rdf_forge::mesh;
namespace spatial = rdf_forge::spatial;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kAluminium = 2700.0;

struct Limits {
  double lower, upper, effort, velocity;
};

class DocBuilder {
 public:
  DocBuilder(fs::path dir, std::string name, std::string description)
      : dir_(std::move(dir)), name_(std::move(name)) {
    doc_["name"] = name_;
    doc_["length_unit"] = "mm";
    doc_["grounded"] = "";
    doc_["author"] = "rdf-forge library";
    doc_["description"] = std::move(description);
    doc_["components"] = ordered_json::array();
    doc_["joints"] = ordered_json::array();
  }

  void component(const std::string& id, const mesh::TriMesh& m, const Mat3& r, const Vec3& t) {
    const std::string file = "meshes/" + name_ + "_" + id + ".stl";
    mesh::save_stl(m, dir_ / file, mesh::StlMode::binary);
    ordered_json c;
    c["id"] = id;
    c["name"] = id;
    c["world_transform"] = transform(r, t);
    c["phys"] = {{"density", kAluminium}};
    c["visual_mesh"] = file;
    doc_["components"].push_back(c);
    if (doc_["grounded"] == "") doc_["grounded"] = id;
  }

  /// Box bar whose long axis runs from `a` to `b` in the xz-plane.
  void bar(const std::string& id, const Vec3& a, const Vec3& b, double width, double thickness) {
    const Vec3 d = b - a;
    const Mat3 r = spatial::rot_y(std::atan2(-d.z(), d.x()));
    component(id, mesh::make_centered_box({d.norm() + width, thickness, width}), r, 0.5 * (a + b));
  }

  void joint(const std::string& name, const std::string& kind, const std::string& parent, const std::string& child,
             const Vec3& at, std::optional<Vec3> axis = std::nullopt, std::optional<Limits> limits = std::nullopt) {
    ordered_json j;
    j["id"] = "j" + std::to_string(doc_["joints"].size() + 1);
    j["name"] = name;
    j["kind"] = kind;
    j["parent"] = parent;
    j["child"] = child;
    j["origin_world"] = transform(Mat3::Identity(), at);
    if (axis) j["axis_world"] = {axis->x(), axis->y(), axis->z()};
    if (limits) {
      j["limits"] = {{"lower", limits->lower},
                     {"upper", limits->upper},
                     {"effort", limits->effort},
                     {"velocity", limits->velocity}};
    }
    doc_["joints"].push_back(j);
  }

  std::string write() const {
    const std::string file = name_ + ".asm.json";
    std::ofstream(dir_ / file) << doc_.dump(2) << "\n";
    return file;
  }

 private:
  static ordered_json transform(const Mat3& r, const Vec3& t) {
    ordered_json rot = ordered_json::array();
    for (int i = 0; i < 3; ++i) {
      for (int k = 0; k < 3; ++k) rot.push_back(std::abs(r(i, k)) < 1e-15 ? 0.0 : r(i, k));
    }
    return {{"rotation", rot}, {"translation", {t.x(), t.y(), t.z()}}};
  }

  fs::path dir_;
  std::string name_;
  ordered_json doc_;
};

const Vec3 kY = Vec3::UnitY();
const Vec3 kZ = Vec3::UnitZ();

std::string two_link_arm(const fs::path& dir) {
  DocBuilder b(dir, "two_link_arm", "Planar two-link arm on a fixed base");
  b.component("base", mesh::make_centered_box({200, 200, 100}), Mat3::Identity(), {0, 0, 50});
  b.component("upper_arm", mesh::make_centered_box({40, 40, 300}), Mat3::Identity(), {0, 0, 250});
  b.component("forearm", mesh::make_centered_box({250, 40, 40}), spatial::rot_y(-kPi / 2), {0, 0, 525});
  b.joint("shoulder", "revolute", "base", "upper_arm", {0, 0, 100}, kZ, Limits{-kPi, kPi, 50, 2});
  b.joint("elbow", "revolute", "upper_arm", "forearm", {0, 0, 400}, kY, Limits{-2, 2, 30, 2});
  return b.write();
}

std::string six_axis_arm(const fs::path& dir) {
  DocBuilder b(dir, "six_axis_arm", "Six-axis serial manipulator");
  const Mat3 y_up = spatial::rot_x(-kPi / 2);
  b.component("base", mesh::make_cylinder(80, 100, 48), Mat3::Identity(), {0, 0, 50});
  b.component("shoulder", mesh::make_cylinder(60, 120, 48), spatial::rot_z(kPi / 6), {0, 0, 160});
  b.component("upper_arm", mesh::make_centered_box({460, 60, 60}), spatial::rot_y(-kPi / 2), {0, 90, 420});
  b.component("forearm", mesh::make_centered_box({400, 50, 50}), Mat3::Identity(), {175, 0, 620});
  b.component("wrist_1", mesh::make_cylinder(35, 80, 32), y_up, {350, 40, 620});
  b.component("wrist_2", mesh::make_cylinder(35, 80, 32), Mat3::Identity(), {350, 80, 680});
  b.component("flange", mesh::make_cylinder(30, 40, 32), y_up, {350, 120, 720});
  b.joint("joint_1", "revolute", "base", "shoulder", {0, 0, 100}, kZ, Limits{-2 * kPi, 2 * kPi, 150, 3});
  b.joint("joint_2", "revolute", "shoulder", "upper_arm", {0, 90, 220}, kY, Limits{-kPi, kPi, 150, 3});
  b.joint("joint_3", "revolute", "upper_arm", "forearm", {0, 45, 620}, kY, Limits{-kPi, kPi, 150, 3});
  // Declared from the wrist towards the forearm.
  b.joint("joint_4", "revolute", "wrist_1", "forearm", {350, 0, 620}, kY, Limits{-kPi, kPi, 28, 6});
  b.joint("joint_5", "revolute", "wrist_1", "wrist_2", {350, 80, 620}, kZ, Limits{-kPi, kPi, 28, 6});
  b.joint("joint_6", "revolute", "wrist_2", "flange", {350, 100, 720}, kY);
  return b.write();
}

std::string four_bar(const fs::path& dir) {
  DocBuilder b(dir, "four_bar", "Planar four-bar linkage (crank-rocker)");
  const Vec3 a(0, 0, 0), bp(0, 0, 200), c(400, 0, 250), d(400, 0, 0);
  b.component("base", mesh::make_centered_box({500, 60, 40}), Mat3::Identity(), {200, 0, -30});
  b.bar("crank", a, bp, 30, 20);
  b.bar("coupler", bp, c, 30, 20);
  b.bar("rocker", d, c, 30, 20);
  const Limits swing{-kPi, kPi, 10, 5};
  b.joint("crank_pivot", "revolute", "base", "crank", a, kY);
  b.joint("coupler_pivot", "revolute", "crank", "coupler", bp, kY, swing);
  b.joint("rocker_coupler", "revolute", "coupler", "rocker", c, kY, swing);
  b.joint("rocker_pivot", "revolute", "base", "rocker", d, kY, swing);
  return b.write();
}

std::string parallel_gripper(const fs::path& dir) {
  DocBuilder b(dir, "parallel_gripper", "Two-finger gripper with parallelogram finger linkages");
  b.component("palm", mesh::make_centered_box({80, 40, 60}), Mat3::Identity(), {0, 0, 0});
  const Limits travel{-0.8, 0.8, 20, 2};
  for (const double side : {-1.0, 1.0}) {
    const std::string p = side < 0 ? "left" : "right";
    const Vec3 a1(20 * side, 0, -10), a2(20 * side, 0, 20), v(40 * side, 0, 60);
    b.bar(p + "_outer", a1, a1 + v, 12, 8);
    b.bar(p + "_inner", a2, a2 + v, 12, 8);
    b.component(p + "_finger", mesh::make_centered_box({20, 30, 100}), Mat3::Identity(), {60 * side, 0, 100});
    const Vec3 axis = side * kY;
    b.joint(p + "_outer_base", "revolute", "palm", p + "_outer", a1, axis, travel);
    b.joint(p + "_inner_base", "revolute", "palm", p + "_inner", a2, axis, travel);
    b.joint(p + "_outer_tip", "revolute", p + "_outer", p + "_finger", a1 + v, axis, travel);
    b.joint(p + "_inner_tip", "revolute", p + "_inner", p + "_finger", a2 + v, axis, travel);
  }
  return b.write();
}

std::string diff_drive(const fs::path& dir) {
  DocBuilder b(dir, "diff_drive", "Differential-drive mobile base with a caster");
  const Mat3 wheel_axis_y = spatial::rot_x(kPi / 2);
  b.component("chassis", mesh::make_centered_box({400, 300, 100}), Mat3::Identity(), {0, 0, 100});
  b.component("left_wheel", mesh::make_cylinder(80, 40, 48), wheel_axis_y, {0, 175, 80});
  b.component("right_wheel", mesh::make_cylinder(80, 40, 48), wheel_axis_y, {0, -175, 80});
  b.component("caster", mesh::make_icosphere(30, 2), Mat3::Identity(), {150, 0, 30});
  b.joint("left_wheel_joint", "revolute", "chassis", "left_wheel", {0, 175, 80}, kY);
  b.joint("right_wheel_joint", "revolute", "chassis", "right_wheel", {0, -175, 80}, kY);
  b.joint("caster_mount", "rigid", "chassis", "caster", {150, 0, 50});
  return b.write();
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: gen_library <library dir>\n";
    return 2;
  }
  const fs::path dir = argv[1];
  fs::create_directories(dir / "meshes");
  struct Row {
    const char* id;
    const char* name;
    const char* type;
    const char* structure;
    std::string (*make)(const fs::path&);
  };
  const Row rows[] = {
      {"two_link_arm", "Two-link arm", "robotic arm", "serial chain", two_link_arm},
      {"six_axis_arm", "Six-axis arm", "robotic arm", "serial chain", six_axis_arm},
      {"four_bar", "Four-bar linkage", "linkage", "closed loop", four_bar},
      {"parallel_gripper", "Parallel gripper", "end effector", "closed loop", parallel_gripper},
      {"diff_drive", "Differential-drive base", "mobile robot", "serial chain", diff_drive},
  };
  ordered_json manifest;
  manifest["models"] = ordered_json::array();
  for (const auto& r : rows) {
    manifest["models"].push_back({{"id", r.id},
                                  {"name", r.name},
                                  {"type", r.type},
                                  {"structure", r.structure},
                                  {"document", r.make(dir)}});
  }
  std::ofstream(dir / "manifest.json") << manifest.dump(2) << "\n";
  return 0;
}
