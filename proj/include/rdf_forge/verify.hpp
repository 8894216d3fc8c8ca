#pragma once

#include "rdf_forge/robot_model.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace rdf_forge::verify {

using spatial::Transform;
using spatial::Vec3;

/// Joint name → value (rad or m). Fixed, ball and planar joints take none.
using JointConfig = std::map<std::string, double>;

/// Every single-DoF joint of `m` at 0.
JointConfig zero_config(const model::RobotModel& m);

/// A joint reduced to the form X_child = X_parent · parent_to_joint ·
/// motion(q) · joint_to_child, independent of the model's framing.
struct TreeJoint {
  std::string name;
  model::JointType type = model::JointType::fixed;
  std::string parent;  ///< declared parent link
  std::string child;   ///< declared child link
  Vec3 axis = Vec3::UnitX();
  std::optional<model::Limits> limits;
  Transform parent_to_joint;
  Transform joint_to_child;
};

struct KinematicTree {
  std::vector<std::string> links;  ///< includes "world" when referenced
  std::vector<TreeJoint> joints;   ///< model order
  /// Spanning forest in traversal order; `reversed` edges are walked from
  /// the declared child to the declared parent.
  std::vector<kingraph::SpanningEdge> spanning;
  std::vector<std::string> loop_joints;
  std::vector<std::string> roots;
  /// Pose of each root relative to the root pose passed to fk.
  std::map<std::string, Transform> root_offsets;

  const TreeJoint* find(const std::string& name) const;
};

KinematicTree build_tree(const model::RobotModel& m);

/// Rest-to-q motion of a joint in its own frame.
Transform joint_motion(const TreeJoint& j, double q);

/// World pose of every link. The first root is placed at `root_pose`.
/// Throws DomainError for missing values, unknown joint names, or values
/// given to joints without a scalar state. Values outside the limits are
/// reported through `warnings` and used as given; values for loop-closing
/// joints are accepted and ignored.
std::map<std::string, Transform> fk(const KinematicTree& tree, const JointConfig& q,
                                    const Transform& root_pose = Transform::identity(),
                                    std::vector<std::string>* warnings = nullptr);
std::map<std::string, Transform> fk(const model::RobotModel& m, const JointConfig& q,
                                    const Transform& root_pose = Transform::identity(),
                                    std::vector<std::string>* warnings = nullptr);

struct LoopResidual {
  std::string joint;
  double position = 0.0;  ///< m
  double angle = 0.0;     ///< rad
};

/// Mismatch at each loop-closing joint between the joint frame reached
/// through its parent and through its child, ignoring motion the joint
/// itself permits. Empty for tree models.
std::vector<LoopResidual> loop_residual(const KinematicTree& tree, const JointConfig& q);
std::vector<LoopResidual> loop_residual(const model::RobotModel& m, const JointConfig& q);

enum class Severity { error, warning, info };
std::string_view to_string(Severity s);

struct Finding {
  Severity severity = Severity::error;
  std::string rule;  ///< "R1" ... "R8"
  std::string subject;
  std::string message;
};

struct ValidationReport {
  std::vector<Finding> findings;  ///< sorted by rule, then subject

  std::size_t count(Severity s) const;
  bool has_errors() const { return count(Severity::error) != 0; }
};

struct ValidateOptions {
  /// Directory mesh references are resolved against; R7 is skipped when
  /// unset.
  std::optional<std::filesystem::path> base_dir;
};

ValidationReport validate(const model::RobotModel& m, const ValidateOptions& opts = {});

/// One line per finding plus a summary line.
std::string render_text(const ValidationReport& r);
/// One tab-separated line per finding: severity, rule, subject, message.
std::string render_machine(const ValidationReport& r);

}  // namespace rdf_forge::verify
