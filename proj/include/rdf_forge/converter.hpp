#pragma once

#include "rdf_forge/assembly.hpp"
#include "rdf_forge/format_io.hpp"
#include "rdf_forge/kingraph.hpp"
#include "rdf_forge/robot_model.hpp"

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rdf_forge::convert {

enum class Format { urdf, sdf };
enum class Simulator { none, pybullet, gazebo };

std::string_view to_string(Format f);
std::string_view to_string(Simulator s);

struct ProfileEntry {
  std::string format;
  std::string simulator;
  bool supported = false;
};

/// Format × simulator pairs known to the tool, including the rows it
/// declines (MJCF, USD and the simulators without an output profile).
const std::vector<ProfileEntry>& profile_matrix();

/// Validates a (format, simulator) pair by name. Throws ProfileError for
/// unknown names and for known but unsupported pairs.
std::pair<Format, Simulator> check_profile(std::string_view format, std::string_view simulator);

struct ConvertOptions {
  Format format = Format::urdf;
  Simulator simulator = Simulator::none;
  std::filesystem::path out_dir = ".";
  bool decompose_cylindrical = true;
  double intermediate_mass = 1e-6;     ///< kg, cylindrical decomposition link
  double intermediate_inertia = 1e-9;  ///< kg·m², diagonal entries
  std::optional<std::string> stamp;    ///< comment written into generated XML
};

/// A mesh file the output tree must contain.
struct MeshAsset {
  std::string relative_path;  ///< e.g. "meshes/base.stl"
  std::filesystem::path source;
};

struct Conversion {
  model::RobotModel model;  ///< chained for URDF, model_frame for SDF
  std::vector<MeshAsset> meshes;
  /// Names of links added by cylindrical decomposition.
  std::vector<std::string> intermediate_links;
};

/// Builds the robot model of a resolved assembly. `graph` must come from
/// the same document (see kingraph::build_graph) and `names` from
/// kingraph::uniquify_names.
Conversion assembly_to_model(const assembly::AssemblyDoc& doc, const kingraph::KinGraph& graph,
                             const kingraph::NameMap& names, const ConvertOptions& opts);

/// Chained → model_frame; continuous joints become revolute with ±1e16
/// limits (effort and velocity −1 when absent).
model::RobotModel urdf_to_sdf(const model::RobotModel& m);

/// model_frame → chained; revolute joints with ±1e16 limits become
/// continuous. Throws ClosedLoopError for loops, UnsupportedJointError for
/// ball joints.
model::RobotModel sdf_to_urdf(const model::RobotModel& m);

/// Relative path → file contents.
using FileTree = std::map<std::string, std::string>;

using ByteReader = std::function<std::string(const std::filesystem::path&)>;
ByteReader file_reader();

/// Lays out the output directory in memory: "<name>/<name>.urdf" or
/// "<name>/model.sdf", "<name>/meshes/*.stl" and, for the gazebo profile,
/// "<name>/model.config". Mesh references in the model must already use
/// the asset paths; the gazebo profile rewrites them to model:// URIs.
FileTree package_output(const model::RobotModel& m, const std::vector<MeshAsset>& meshes,
                        const ConvertOptions& opts, const format::ModelConfig& config = {},
                        const ByteReader& read = file_reader());

/// Writes every file under `root`, creating directories. Throws IoError.
void write_tree(const FileTree& tree, const std::filesystem::path& root);

struct PipelineResult {
  assembly::AssemblyDoc doc;  ///< resolved
  kingraph::KinGraph graph;
  Conversion conversion;
  FileTree files;
  std::filesystem::path output_dir;  ///< out_dir / model name
};

/// parse → resolve → graph → convert → package → write.
PipelineResult convert_file(const std::filesystem::path& input, const ConvertOptions& opts);

/// Same as convert_file without reading the document from disk or
/// touching the output directory.
PipelineResult convert_document(const assembly::AssemblyDoc& doc, const ConvertOptions& opts,
                                const assembly::MeshLoader& loader = assembly::stl_loader(),
                                const ByteReader& read = file_reader());

}  // namespace rdf_forge::convert
