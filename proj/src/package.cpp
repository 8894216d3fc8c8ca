#include "rdf_forge/converter.hpp"

#include "rdf_forge/errors.hpp"

#include <fstream>
#include <iterator>
#include <set>

namespace rdf_forge::convert {

namespace fs = std::filesystem;

ByteReader file_reader() {
  return [](const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read '" + path.string() + "'");
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  };
}

FileTree package_output(const model::RobotModel& m, const std::vector<MeshAsset>& meshes,
                        const ConvertOptions& opts, const format::ModelConfig& config, const ByteReader& read) {
  if (m.name.empty()) throw std::invalid_argument("package_output: model has no name");
  const std::string root = m.name + "/";
  format::EmitOptions emit;
  emit.stamp = opts.stamp;
  if (opts.simulator == Simulator::gazebo) emit.mesh_path_style = format::MeshPathStyle::model_uri;

  FileTree tree;
  std::string description_file;
  if (opts.format == Format::urdf) {
    description_file = m.name + ".urdf";
    tree[root + description_file] = format::emit_urdf(m, emit);
  } else {
    description_file = "model.sdf";
    tree[root + description_file] = format::emit_sdf(m, emit);
  }

  std::set<std::string> seen;
  for (const auto& asset : meshes) {
    if (!seen.insert(asset.relative_path).second) {
      throw DomainError("duplicate mesh filename '" + asset.relative_path + "'");
    }
    tree[root + asset.relative_path] = read(asset.source);
  }

  if (opts.simulator == Simulator::gazebo) {
    format::ModelConfig c = config;
    c.name = m.name;
    c.sdf_file = description_file;
    tree[root + "model.config"] = format::emit_model_config(c);
  }
  return tree;
}

void write_tree(const FileTree& tree, const fs::path& root) {
  for (const auto& [rel, bytes] : tree) {
    const fs::path path = root / rel;
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create '" + path.parent_path().string() + "': " + ec.message());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("failed writing '" + path.string() + "'");
  }
}

PipelineResult convert_document(const assembly::AssemblyDoc& doc, const ConvertOptions& opts,
                                const assembly::MeshLoader& loader, const ByteReader& read) {
  PipelineResult r;
  r.doc = assembly::resolve_physical(doc, loader);
  r.graph = kingraph::analyze_assembly(r.doc);
  const auto names = kingraph::uniquify_names(r.doc);
  r.conversion = assembly_to_model(r.doc, r.graph, names, opts);
  r.files = package_output(r.conversion.model, r.conversion.meshes, opts,
                           {r.conversion.model.name, r.doc.author, r.doc.description, {}}, read);
  r.output_dir = opts.out_dir / r.conversion.model.name;
  return r;
}

PipelineResult convert_file(const fs::path& input, const ConvertOptions& opts) {
  auto r = convert_document(assembly::load_assembly(input), opts);
  write_tree(r.files, opts.out_dir);
  return r;
}

}  // namespace rdf_forge::convert
