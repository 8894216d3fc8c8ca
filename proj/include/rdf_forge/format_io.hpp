#pragma once

#include "rdf_forge/robot_model.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rdf_forge::format {

enum class MeshPathStyle {
  relative,   ///< filenames written as stored
  model_uri,  ///< relative filenames prefixed with model://<model name>/
};

struct EmitOptions {
  MeshPathStyle mesh_path_style = MeshPathStyle::relative;
  /// Written as a leading XML comment when set. Off by default so output
  /// stays byte-identical across runs.
  std::optional<std::string> stamp;
};

/// Non-fatal parser diagnostics (ignored elements and the like).
using Warnings = std::vector<std::string>;

/// Requires chained framing and a single tree of fixed, revolute,
/// continuous, prismatic or planar joints. Throws ClosedLoopError naming the
/// loop-closing joints, UnsupportedJointError for ball joints.
std::string emit_urdf(const model::RobotModel& m, const EmitOptions& opts = {});

/// Missing optional elements take URDF defaults: identity origins, axis
/// (1, 0, 0), zero dynamics.
model::RobotModel parse_urdf(std::string_view text, Warnings* warnings = nullptr);

/// Requires model_frame framing and joints of SDF kinds (fixed, revolute,
/// prismatic, ball). Loop-closing joints are written like any other joint.
std::string emit_sdf(const model::RobotModel& m, const EmitOptions& opts = {});

/// Reads the first <model> of an SDF ≥ 1.4 document using 1.7 pose
/// semantics. Missing poses are identity; a joint parent of "world" refers
/// to the reserved world frame.
model::RobotModel parse_sdf(std::string_view text, Warnings* warnings = nullptr);

/// Gazebo model.config companion file.
struct ModelConfig {
  std::string name;
  std::string author;
  std::string description;
  std::string sdf_file = "model.sdf";
};

std::string emit_model_config(const ModelConfig& config);
ModelConfig parse_model_config(std::string_view text);

/// Limit magnitude SDF uses for "unbounded".
inline constexpr double kSdfUnbounded = 1e16;

}  // namespace rdf_forge::format
