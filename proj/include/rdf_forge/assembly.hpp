#pragma once

#include "rdf_forge/mesh.hpp"
#include "rdf_forge/spatial.hpp"

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace rdf_forge::assembly {

using spatial::InertiaTensor;
using spatial::Transform;
using spatial::UnitAxis;
using spatial::Vec3;

enum class LengthUnit { mm, cm, m };

/// Meters per unit.
double unit_factor(LengthUnit unit);
std::string_view to_string(LengthUnit unit);

struct MeshRef {
  std::filesystem::path path;  ///< resolved against the document's directory
  Vec3 scale = Vec3::Ones();   ///< file units → meters, unit factor included
};

/// Mass properties given directly, in the component frame.
struct ExplicitPhys {
  double mass = 0.0;
  Vec3 com = Vec3::Zero();
  InertiaTensor inertia_com;
};

/// Mass properties to be integrated from the collision mesh.
struct DensityPhys {
  double density = 0.0;
};

using PhysSource = std::variant<ExplicitPhys, DensityPhys>;

struct ComponentRec {
  std::string id;
  std::string name;
  Transform world_transform;  ///< component frame in the assembly frame at q = 0
  PhysSource phys;
  std::optional<MeshRef> visual_mesh;
  std::optional<MeshRef> collision_mesh;  ///< defaults to visual_mesh
};

enum class JointKind { rigid, revolute, slider, cylindrical, ball, planar };

std::string_view to_string(JointKind kind);
std::optional<JointKind> joint_kind_from_string(std::string_view s);
/// Kinds whose motion is defined by an axis.
bool needs_axis(JointKind kind);

struct JointLimits {
  double lower = 0.0;
  double upper = 0.0;
  double effort = 0.0;
  double velocity = 0.0;
};

struct JointRec {
  std::string id;
  std::string name;
  JointKind kind = JointKind::rigid;
  std::string parent;
  std::string child;
  Transform origin_world;  ///< joint geometry frame in the assembly frame
  std::optional<UnitAxis> axis_world;
  std::optional<JointLimits> limits;
};

struct AssemblyDoc {
  std::string name;
  LengthUnit length_unit = LengthUnit::m;  ///< as declared; stored values are meters
  std::string grounded;
  std::string author;       ///< optional metadata
  std::string description;  ///< optional metadata
  std::vector<ComponentRec> components;
  std::vector<JointRec> joints;

  const ComponentRec* find_component(std::string_view id) const;
  const JointRec* find_joint(std::string_view id) const;
};

/// Parses and validates an interchange document. Lengths are converted to
/// meters; mesh paths are resolved against `base_dir`.
AssemblyDoc parse_assembly(std::string_view text, const std::filesystem::path& base_dir = {});
AssemblyDoc load_assembly(const std::filesystem::path& path);

using MeshLoader = std::function<mesh::TriMesh(const std::filesystem::path&)>;

/// Loads STL files from disk.
MeshLoader stl_loader();

/// Replaces every density source by explicit mass properties integrated
/// from the component's collision mesh (scaled to meters).
AssemblyDoc resolve_physical(const AssemblyDoc& doc, const MeshLoader& loader = stl_loader());

/// Resolved mass of a component; throws if the source is still a density.
const ExplicitPhys& explicit_phys(const ComponentRec& c);

}  // namespace rdf_forge::assembly
