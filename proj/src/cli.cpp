#include "rdf_forge/cli.hpp"

#include "rdf_forge/assembly.hpp"
#include "rdf_forge/converter.hpp"
#include "rdf_forge/errors.hpp"
#include "rdf_forge/format_io.hpp"
#include "rdf_forge/kingraph.hpp"
#include "rdf_forge/library.hpp"
#include "rdf_forge/mesh.hpp"
#include "rdf_forge/number_format.hpp"
#include "rdf_forge/stl.hpp"
#include "rdf_forge/verify.hpp"
#include "rdf_forge/xml.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iterator>
#include <ostream>
#include <sstream>

namespace rdf_forge::cli {

namespace fs = std::filesystem;

namespace {

enum class InputKind { assembly, urdf, sdf };

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file", path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

bool ends_with(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

InputKind detect_kind(const fs::path& path, const std::string& text) {
  const std::string name = path.filename().string();
  if (ends_with(name, ".urdf")) return InputKind::urdf;
  if (ends_with(name, ".sdf")) return InputKind::sdf;
  if (ends_with(name, ".json") || ends_with(name, ".asm")) return InputKind::assembly;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return InputKind::assembly;
  if (first != std::string::npos && text[first] == '<') {
    const auto root = xml::parse(text);
    if (root.name == "robot") return InputKind::urdf;
    if (root.name == "sdf") return InputKind::sdf;
    throw ParseError("cannot tell the input format from root element <" + root.name + ">", path.string());
  }
  throw ParseError("cannot tell the input format (expected .urdf, .sdf, .json or .asm)", path.string());
}

/// A robot description or assembly reduced to what inspect and graph show.
struct Loaded {
  InputKind kind = InputKind::assembly;
  model::RobotModel model;  ///< urdf/sdf inputs
  assembly::AssemblyDoc doc;  ///< assembly inputs
  std::vector<std::string> warnings;
};

Loaded load_input(const fs::path& path) {
  const std::string text = read_file(path);
  Loaded l;
  l.kind = detect_kind(path, text);
  try {
    switch (l.kind) {
      case InputKind::urdf: l.model = format::parse_urdf(text, &l.warnings); break;
      case InputKind::sdf: l.model = format::parse_sdf(text, &l.warnings); break;
      case InputKind::assembly: l.doc = assembly::parse_assembly(text, path.parent_path()); break;
    }
  } catch (const ParseError& e) {
    throw ParseError(e.what(), path.string());
  }
  return l;
}

void print_warnings(const std::vector<std::string>& warnings, std::ostream& err) {
  for (const auto& w : warnings) err << "warning: " << w << "\n";
}

std::string vec_text(const spatial::Vec3& v) { return "(" + format_numbers({v.x(), v.y(), v.z()}) + ")"; }

std::string stamp_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream s;
  s << "generated by rdf-forge on " << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

struct ConvertArgs {
  std::string input;
  std::string format = "urdf";
  std::string simulator = "none";
  std::string out = ".";
  bool stamp = false;
};

int do_convert(const fs::path& input, const ConvertArgs& a, std::ostream& out) {
  const auto [format, simulator] = convert::check_profile(a.format, a.simulator);
  convert::ConvertOptions opts;
  opts.format = format;
  opts.simulator = simulator;
  opts.out_dir = a.out;
  if (a.stamp) opts.stamp = stamp_now();
  const auto r = convert::convert_file(input, opts);
  const auto& m = r.conversion.model;
  out << "converted " << r.doc.name << ": " << m.links.size() << " links, " << m.joints.size() << " joints, "
      << kingraph::to_string(r.graph.classification);
  if (r.graph.cycle_rank() > 0) out << " (cycle rank " << r.graph.cycle_rank() << ")";
  out << "\n";
  out << "format " << convert::to_string(format) << ", simulator " << convert::to_string(simulator) << "\n";
  out << "output " << r.output_dir.string() << "\n";
  for (const auto& [path, bytes] : r.files) out << "  " << path << "\n";
  return kSuccess;
}

int cmd_validate(const fs::path& input, bool machine, std::ostream& out, std::ostream& err) {
  const Loaded l = load_input(input);
  print_warnings(l.warnings, err);
  verify::ValidationReport report;
  if (l.kind == InputKind::assembly) {
    const auto doc = assembly::resolve_physical(l.doc);
    const auto graph = kingraph::analyze_assembly(doc);
    convert::ConvertOptions opts;
    opts.format = convert::Format::sdf;
    for (const auto& j : doc.joints) {
      if (j.kind == assembly::JointKind::planar) opts.format = convert::Format::urdf;
    }
    report = verify::validate(convert::assembly_to_model(doc, graph, kingraph::uniquify_names(doc), opts).model);
  } else {
    report = verify::validate(l.model, {input.parent_path()});
  }
  out << (machine ? verify::render_machine(report) : verify::render_text(report));
  return report.has_errors() ? kDomainError : kSuccess;
}

std::string limits_text(const std::optional<model::Limits>& l) {
  if (!l) return "-";
  return "[" + format_number(l->lower) + ", " + format_number(l->upper) + "] effort " + format_number(l->effort) +
         " velocity " + format_number(l->velocity);
}

int cmd_inspect(const fs::path& input, std::ostream& out, std::ostream& err) {
  const Loaded l = load_input(input);
  print_warnings(l.warnings, err);
  kingraph::KinGraph graph;
  double total = 0.0;
  std::size_t link_count = 0;
  if (l.kind == InputKind::assembly) {
    const auto doc = assembly::resolve_physical(l.doc);
    graph = kingraph::analyze_assembly(doc);
    out << "assembly " << doc.name << " (" << assembly::to_string(doc.length_unit) << " source units)\n";
    out << "links:\n";
    for (const auto& c : doc.components) {
      const auto& p = assembly::explicit_phys(c);
      const auto com = c.world_transform.apply(p.com);
      out << "  " << c.id << "  mass " << format_number(p.mass) << " kg  com " << vec_text(com)
          << (c.id == doc.grounded ? "  grounded" : "") << "\n";
      total += p.mass;
    }
    link_count = doc.components.size();
    out << "joints:\n";
    for (const auto& j : doc.joints) {
      out << "  " << j.id << "  " << assembly::to_string(j.kind) << "  " << j.parent << " -> " << j.child;
      if (j.axis_world) out << "  axis " << vec_text(j.axis_world->vec());
      if (j.limits) {
        out << "  limits [" << format_number(j.limits->lower) << ", " << format_number(j.limits->upper) << "]";
      }
      out << "\n";
    }
  } else {
    const auto& m = l.model;
    graph = model::topology(m);
    out << "model " << m.name << " (" << (l.kind == InputKind::urdf ? "urdf" : "sdf") << ")\n";
    out << "links:\n";
    for (const auto& link : m.links) {
      out << "  " << link.name;
      if (link.inertial) {
        out << "  mass " << format_number(link.inertial->mass) << " kg  com "
            << vec_text(link.inertial->origin.translation());
      } else {
        out << "  no inertial";
      }
      out << "\n";
    }
    link_count = m.links.size();
    total = model::total_mass(m);
    out << "joints:\n";
    for (const auto& j : m.joints) {
      out << "  " << j.name << "  " << model::to_string(j.type) << "  " << j.parent << " -> " << j.child;
      if (j.axis) out << "  axis " << vec_text(*j.axis);
      out << "  limits " << limits_text(j.limits) << "\n";
    }
  }
  if (link_count == 0) err << "warning: model has no links\n";
  out << link_count << " links, " << graph.edges.size() << " joints, " << kingraph::to_string(graph.classification)
      << ", cycle rank " << graph.cycle_rank() << "\n";
  out << "total mass " << format_number(total) << " kg\n";
  return kSuccess;
}

int cmd_graph(const fs::path& input, std::ostream& out, std::ostream& err) {
  const Loaded l = load_input(input);
  print_warnings(l.warnings, err);
  kingraph::KinGraph graph;
  std::string title;
  std::map<std::string, std::string> edge_labels;
  if (l.kind == InputKind::assembly) {
    graph = kingraph::analyze_assembly(l.doc);
    title = l.doc.name;
    for (const auto& j : l.doc.joints) edge_labels[j.id] = j.id + " (" + std::string(assembly::to_string(j.kind)) + ")";
  } else {
    graph = model::topology(l.model);
    title = l.model.name;
    for (const auto& j : l.model.joints) edge_labels[j.name] = j.name + " (" + std::string(model::to_string(j.type)) + ")";
  }
  out << kingraph::to_dot(graph, title, {}, edge_labels);
  if (graph.classification == kingraph::Classification::disconnected) {
    std::string list;
    for (const auto& n : graph.unreachable) list += (list.empty() ? "" : ", ") + n;
    err << "error: graph is disconnected; not reachable from '" << graph.root << "': " << list << "\n";
    return kDomainError;
  }
  return kSuccess;
}

int cmd_mesh_props(const fs::path& path, double density, std::ostream& out) {
  const auto tri = mesh::load_stl(path);
  const auto report = mesh::is_watertight(tri);
  out << "vertices " << tri.vertices.size() << ", triangles " << tri.triangles.size() << "\n";
  if (!report.watertight) {
    out << "watertight: no (" << report.violations.size() << " open edges)\n";
    throw MeshError("mesh is not watertight: " + std::to_string(report.violations.size()) + " open edges");
  }
  const auto p = mesh::mass_properties(tri, density);
  const auto& i = p.inertia_com;
  out << "watertight: yes\n";
  out << "volume " << format_number(p.volume) << "\n";
  out << "mass " << format_number(p.mass) << "\n";
  out << "com " << format_numbers({p.com.x(), p.com.y(), p.com.z()}) << "\n";
  out << "inertia ixx " << format_number(i.ixx) << " iyy " << format_number(i.iyy) << " izz " << format_number(i.izz)
      << " ixy " << format_number(i.ixy) << " ixz " << format_number(i.ixz) << " iyz " << format_number(i.iyz)
      << "\n";
  return kSuccess;
}

void add_convert_flags(CLI::App* cmd, ConvertArgs& a) {
  cmd->add_option("--format", a.format, "Target description format: urdf or sdf")->capture_default_str();
  cmd->add_option("--simulator", a.simulator, "Target simulator profile: none, pybullet or gazebo")
      ->capture_default_str();
  cmd->add_option("--out", a.out, "Directory that receives the <model>/ folder")->capture_default_str();
  cmd->add_flag("--stamp", a.stamp, "Write a generation timestamp comment into XML output");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Convert CAD assembly documents into URDF and SDF robot descriptions", "rdf-forge"};
  app.require_subcommand(1);

  ConvertArgs convert_args;
  auto* convert_cmd = app.add_subcommand("convert", "Convert an assembly document");
  convert_cmd->add_option("input", convert_args.input, "Assembly document (.json)")->required();
  add_convert_flags(convert_cmd, convert_args);

  std::string input;
  bool machine = false;
  auto* validate_cmd = app.add_subcommand("validate", "Check an assembly, URDF or SDF file");
  validate_cmd->add_option("input", input, "Input file")->required();
  validate_cmd->add_flag("--machine", machine, "Tab-separated output");

  auto* inspect_cmd = app.add_subcommand("inspect", "Summarize links, joints and structure");
  inspect_cmd->add_option("input", input, "Input file")->required();

  bool dot = true;
  auto* graph_cmd = app.add_subcommand("graph", "Print the joint graph");
  graph_cmd->add_option("input", input, "Input file")->required();
  graph_cmd->add_flag("--dot", dot, "DOT output (the only format)");

  double density = 1.0;
  auto* mesh_cmd = app.add_subcommand("mesh-props", "Mass properties of a closed STL mesh");
  mesh_cmd->add_option("mesh", input, "STL file")->required();
  mesh_cmd->add_option("--density", density, "Density in kg/m^3")->check(CLI::PositiveNumber)->capture_default_str();

  auto* library_cmd = app.add_subcommand("library", "Bundled model library");
  library_cmd->require_subcommand(1);
  auto* list_cmd = library_cmd->add_subcommand("list", "List bundled models");
  std::string model_id;
  ConvertArgs export_args;
  auto* export_cmd = library_cmd->add_subcommand("export", "Convert a bundled model");
  export_cmd->add_option("id", model_id, "Model id")->required();
  add_convert_flags(export_cmd, export_args);

  std::vector<std::string> rest(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    for (const auto* sub : app.get_subcommands()) {
      if (sub->parsed()) {
        err << sub->help();
        return kUsageError;
      }
    }
    err << "run 'rdf-forge --help' for usage\n";
    return kUsageError;
  }

  try {
    if (convert_cmd->parsed()) return do_convert(convert_args.input, convert_args, out);
    if (validate_cmd->parsed()) return cmd_validate(input, machine, out, err);
    if (inspect_cmd->parsed()) return cmd_inspect(input, out, err);
    if (graph_cmd->parsed()) return cmd_graph(input, out, err);
    if (mesh_cmd->parsed()) return cmd_mesh_props(input, density, out);
    if (list_cmd->parsed()) {
      out << library::render_table(library::load_manifest());
      return kSuccess;
    }
    if (export_cmd->parsed()) {
      const auto manifest = library::load_manifest();
      const auto* entry = manifest.find(model_id);
      if (!entry) {
        err << "error: unknown library model '" << model_id << "' (see 'rdf-forge library list')\n";
        return kUsageError;
      }
      return do_convert(entry->document, export_args, out);
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const ProfileError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kDomainError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kDomainError;
  }
  return kUsageError;
}

}  // namespace rdf_forge::cli
