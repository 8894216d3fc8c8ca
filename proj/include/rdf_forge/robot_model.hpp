#pragma once

#include "rdf_forge/kingraph.hpp"
#include "rdf_forge/spatial.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace rdf_forge::model {

using spatial::InertiaTensor;
using spatial::Transform;
using spatial::Vec3;

/// Reserved name of the fixed world frame in SDF joint references.
inline constexpr std::string_view kWorldLink = "world";

/// How poses are expressed.
///  - chained: joint origin is relative to the parent link frame and the
///    child link frame coincides with the joint frame (URDF).
///  - model_frame: every link has a pose in the model frame and each joint
///    pose is relative to its child link (SDF 1.7 defaults).
enum class Framing { chained, model_frame };

enum class JointType { fixed, revolute, continuous, prismatic, planar, ball };

std::string_view to_string(Framing f);
std::string_view to_string(JointType t);
std::optional<JointType> joint_type_from_string(std::string_view s);
/// revolute, continuous, prismatic and planar carry an axis (planar: the
/// plane normal).
bool has_axis(JointType t);
/// Joints whose state is one scalar.
bool is_single_dof(JointType t);

struct Inertial {
  double mass = 0.0;
  Transform origin;       ///< center-of-mass frame in the link frame
  InertiaTensor inertia;  ///< about the com, in origin axes
};

struct MeshGeometry {
  std::string filename;
  Vec3 scale = Vec3::Ones();
};
struct BoxGeometry {
  Vec3 size = Vec3::Zero();
};
struct CylinderGeometry {
  double radius = 0.0;
  double length = 0.0;
};
struct SphereGeometry {
  double radius = 0.0;
};

using Geometry = std::variant<MeshGeometry, BoxGeometry, CylinderGeometry, SphereGeometry>;

struct GeometryElement {
  Transform origin;  ///< in the link frame
  Geometry geometry;
};

struct Link {
  std::string name;
  std::optional<Inertial> inertial;
  std::vector<GeometryElement> visuals;
  std::vector<GeometryElement> collisions;
  Transform pose_in_model;  ///< model_frame framing only
};

struct Limits {
  double lower = 0.0;
  double upper = 0.0;
  double effort = 0.0;
  double velocity = 0.0;
};

struct Dynamics {
  double damping = 0.0;
  double friction = 0.0;
};

struct JointSpec {
  std::string name;
  JointType type = JointType::fixed;
  std::string parent;
  std::string child;
  Transform origin;         ///< meaning depends on the model's framing
  std::optional<Vec3> axis;  ///< in the joint frame
  std::optional<Limits> limits;
  Dynamics dynamics;
};

struct RobotModel {
  std::string name;
  Framing framing = Framing::chained;
  std::vector<Link> links;
  std::vector<JointSpec> joints;

  const Link* find_link(std::string_view name) const;
  Link* find_link(std::string_view name);
  const JointSpec* find_joint(std::string_view name) const;
  /// Joint whose child is `link`, if any.
  const JointSpec* parent_joint(std::string_view link) const;
};

/// Joint graph over link names (plus "world" when referenced). The root is
/// "world" if referenced, else the first link that is no joint's child,
/// else the first link.
kingraph::KinGraph topology(const RobotModel& m);

/// Chained → model_frame. Link poses come from composing joint origins
/// outward from the root; joint poses become identity.
RobotModel to_model_frame(const RobotModel& m);

/// model_frame → chained. Each link frame moves onto its parent joint's
/// frame (link contents are re-expressed to stay put) and joint origins
/// become parent-relative. Throws ClosedLoopError for loops.
RobotModel to_chained(const RobotModel& m);

/// Describes the first difference between two models, comparing numbers
/// within `tol` and names/structure exactly. nullopt when equivalent.
std::optional<std::string> compare_models(const RobotModel& a, const RobotModel& b, double tol);

/// Σ link masses.
double total_mass(const RobotModel& m);

}  // namespace rdf_forge::model
