#include "rdf_forge/converter.hpp"

#include "rdf_forge/errors.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace rdf_forge::convert {

using assembly::JointKind;
using model::JointType;
using spatial::Transform;
using spatial::Vec3;

std::string_view to_string(Format f) { return f == Format::urdf ? "urdf" : "sdf"; }

std::string_view to_string(Simulator s) {
  switch (s) {
    case Simulator::none: return "none";
    case Simulator::pybullet: return "pybullet";
    case Simulator::gazebo: return "gazebo";
  }
  return "none";
}

namespace {

// Which simulators load each description format.
const std::map<std::string, std::set<std::string>>& simulator_support() {
  static const std::map<std::string, std::set<std::string>> table{
      {"urdf", {"gazebo", "isaac", "mujoco", "pybullet", "coppeliasim"}},
      {"sdf", {"gazebo", "pybullet"}},
      {"usd", {"isaac"}},
      {"mjcf", {"raisim", "isaac", "mujoco", "pybullet"}},
  };
  return table;
}

const std::vector<std::string>& known_simulators() {
  static const std::vector<std::string> sims{"none",   "pybullet", "gazebo", "mujoco", "isaac",
                                             "coppeliasim", "raisim", "webots", "carla"};
  return sims;
}

bool has_profile(const std::string& format, const std::string& sim) {
  return (format == "urdf" || format == "sdf") && (sim == "none" || sim == "pybullet" || sim == "gazebo");
}

}  // namespace

const std::vector<ProfileEntry>& profile_matrix() {
  static const std::vector<ProfileEntry> matrix = [] {
    std::vector<ProfileEntry> out;
    for (const char* f : {"urdf", "sdf", "mjcf", "usd"}) {
      for (const auto& s : known_simulators()) out.push_back({f, s, has_profile(f, s)});
    }
    return out;
  }();
  return matrix;
}

std::pair<Format, Simulator> check_profile(std::string_view format, std::string_view simulator) {
  const std::string f(format);
  const std::string s(simulator);
  if (!simulator_support().count(f)) {
    throw ProfileError("unknown format '" + f + "' (expected urdf or sdf)");
  }
  if (std::find(known_simulators().begin(), known_simulators().end(), s) == known_simulators().end()) {
    throw ProfileError("unknown simulator '" + s + "' (expected none, pybullet or gazebo)");
  }
  if (s != "none" && !simulator_support().at(f).count(s)) {
    throw ProfileError(s + " does not load " + f + " models");
  }
  if (!has_profile(f, s)) {
    throw ProfileError("no output profile for format '" + f + "' with simulator '" + s +
                       "' (supported: urdf or sdf with none, pybullet or gazebo)");
  }
  return {f == "urdf" ? Format::urdf : Format::sdf,
          s == "none" ? Simulator::none : s == "pybullet" ? Simulator::pybullet : Simulator::gazebo};
}

namespace {

std::string joined(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : ", ") + s;
  return out;
}

model::Limits to_model_limits(const assembly::JointLimits& l) { return {l.lower, l.upper, l.effort, l.velocity}; }

model::Limits unbounded(const std::optional<model::Limits>& l) {
  return {-format::kSdfUnbounded, format::kSdfUnbounded, l ? l->effort : -1.0, l ? l->velocity : -1.0};
}

class Builder {
 public:
  Builder(const assembly::AssemblyDoc& doc, const kingraph::KinGraph& graph, const kingraph::NameMap& names,
          const ConvertOptions& opts)
      : doc_(doc), graph_(graph), names_(names), opts_(opts) {
    for (const auto& [id, name] : names.components) allocator_.allocate(name);
    for (const auto& [id, name] : names.joints) allocator_.allocate(name);
  }

  Conversion run() {
    check_convertible();
    out_.model.name = kingraph::sanitize_name(doc_.name);
    out_.model.framing = model::Framing::chained;

    frame_[graph_.root] = component(graph_.root).world_transform;
    add_link(graph_.root);
    for (const auto& e : graph_.spanning_edges) {
      const auto& j = *doc_.find_joint(e.id);
      frame_[e.child] = Transform(component(e.child).world_transform.rotation(), j.origin_world.translation());
      add_link(e.child);
      add_spanning_joint(j, e);
    }

    if (opts_.format == Format::sdf) {
      out_.model = urdf_to_sdf(out_.model);
      for (const auto& id : graph_.loop_edges) add_loop_joint(*doc_.find_joint(id));
    }
    return std::move(out_);
  }

 private:
  const assembly::ComponentRec& component(const std::string& id) const { return *doc_.find_component(id); }

  void check_convertible() const {
    if (graph_.classification == kingraph::Classification::disconnected) {
      throw GraphError("assembly is not connected to '" + graph_.root + "': " + joined(graph_.unreachable),
                       graph_.unreachable);
    }
    if (opts_.format == Format::urdf) {
      if (!graph_.loop_edges.empty()) {
        std::vector<std::string> loop;
        for (const auto& id : graph_.loop_edges) loop.push_back(names_.joint(id));
        throw ClosedLoopError("closed kinematic loop cannot be represented in URDF (loop-closing joints: " +
                                  joined(loop) + "); export SDF instead",
                              loop);
      }
      for (const auto& j : doc_.joints) {
        if (j.kind == JointKind::ball) {
          throw UnsupportedJointError("URDF has no ball joint type: joint '" + names_.joint(j.id) + "'");
        }
      }
    } else {
      for (const auto& j : doc_.joints) {
        if (j.kind == JointKind::planar) {
          throw UnsupportedJointError("SDF has no planar joint type: joint '" + names_.joint(j.id) + "'");
        }
      }
      for (const auto& id : graph_.loop_edges) {
        if (doc_.find_joint(id)->kind == JointKind::cylindrical) {
          throw UnsupportedJointError("cylindrical joint '" + names_.joint(id) +
                                      "' closes a loop and cannot be decomposed");
        }
      }
    }
    if (!opts_.decompose_cylindrical) {
      for (const auto& j : doc_.joints) {
        if (j.kind == JointKind::cylindrical) {
          throw UnsupportedJointError("cylindrical joint '" + names_.joint(j.id) +
                                      "' requires decomposition, which is disabled");
        }
      }
    }
  }

  std::string add_mesh(const std::string& link, const std::string& suffix, const assembly::MeshRef& ref) {
    for (const auto& m : out_.meshes) {
      if (m.source == ref.path && m.relative_path == "meshes/" + link + ".stl") return m.relative_path;
    }
    const std::string rel = "meshes/" + link + suffix + ".stl";
    for (const auto& m : out_.meshes) {
      if (m.relative_path == rel) throw DomainError("duplicate mesh filename '" + rel + "'");
    }
    out_.meshes.push_back({rel, ref.path});
    return rel;
  }

  void add_link(const std::string& id) {
    const auto& c = component(id);
    const Transform& f = frame_.at(id);
    const Transform offset = spatial::relative(f, c.world_transform);
    model::Link link;
    link.name = names_.component(id);
    const auto& phys = assembly::explicit_phys(c);
    model::Inertial in;
    in.mass = phys.mass;
    in.origin = Transform::translate(offset.apply(phys.com));
    in.inertia = spatial::rotate_inertia(phys.inertia_com, offset.rotation());
    link.inertial = in;
    if (c.visual_mesh) {
      const auto rel = add_mesh(link.name, "", *c.visual_mesh);
      link.visuals.push_back({offset, model::MeshGeometry{rel, c.visual_mesh->scale}});
    }
    if (c.collision_mesh) {
      const auto rel = add_mesh(link.name, "_collision", *c.collision_mesh);
      link.collisions.push_back({offset, model::MeshGeometry{rel, c.collision_mesh->scale}});
    }
    out_.model.links.push_back(std::move(link));
  }

  Vec3 link_axis(const assembly::JointRec& j, const std::string& link_id, bool reversed) const {
    Vec3 a = frame_.at(link_id).rotation().transpose() * j.axis_world->vec();
    a.normalize();
    return reversed ? Vec3(-a) : a;
  }

  void add_spanning_joint(const assembly::JointRec& j, const kingraph::SpanningEdge& e) {
    model::JointSpec spec;
    spec.name = names_.joint(j.id);
    spec.parent = names_.component(e.parent);
    spec.child = names_.component(e.child);
    spec.origin = spatial::relative(frame_.at(e.parent), frame_.at(e.child));
    if (assembly::needs_axis(j.kind)) spec.axis = link_axis(j, e.child, e.reversed);
    switch (j.kind) {
      case JointKind::rigid: spec.type = JointType::fixed; break;
      case JointKind::revolute:
        spec.type = j.limits ? JointType::revolute : JointType::continuous;
        if (j.limits) spec.limits = to_model_limits(*j.limits);
        break;
      case JointKind::slider:
        spec.type = JointType::prismatic;
        spec.limits = to_model_limits(*j.limits);
        break;
      case JointKind::ball: spec.type = JointType::ball; break;
      case JointKind::planar: spec.type = JointType::planar; break;
      case JointKind::cylindrical: add_cylindrical(j, spec); return;
    }
    out_.model.joints.push_back(std::move(spec));
  }

  // Prismatic joint onto an intermediate link at the child frame, then a
  // continuous joint about the same axis.
  void add_cylindrical(const assembly::JointRec& j, model::JointSpec spec) {
    model::Link mid;
    mid.name = allocator_.allocate(spec.name + "_slider");
    mid.inertial = model::Inertial{opts_.intermediate_mass, Transform::identity(),
                                   spatial::InertiaTensor::diagonal(opts_.intermediate_inertia,
                                                                    opts_.intermediate_inertia,
                                                                    opts_.intermediate_inertia)};
    out_.intermediate_links.push_back(mid.name);
    out_.model.links.push_back(std::move(mid));

    model::JointSpec slide = spec;
    slide.name = allocator_.allocate(spec.name + "_slide");
    slide.type = JointType::prismatic;
    slide.child = out_.intermediate_links.back();
    slide.limits = to_model_limits(*j.limits);

    spec.type = JointType::continuous;
    spec.parent = out_.intermediate_links.back();
    spec.origin = Transform::identity();
    spec.limits.reset();
    out_.model.joints.push_back(std::move(slide));
    out_.model.joints.push_back(std::move(spec));
  }

  void add_loop_joint(const assembly::JointRec& j) {
    const Transform& child_frame = frame_.at(j.child);
    const Transform joint_frame(child_frame.rotation(), j.origin_world.translation());
    model::JointSpec spec;
    spec.name = names_.joint(j.id);
    spec.parent = names_.component(j.parent);
    spec.child = names_.component(j.child);
    spec.origin = spatial::relative(child_frame, joint_frame);
    if (assembly::needs_axis(j.kind)) spec.axis = link_axis(j, j.child, false);
    switch (j.kind) {
      case JointKind::rigid: spec.type = JointType::fixed; break;
      case JointKind::revolute:
        spec.type = JointType::revolute;
        spec.limits = j.limits ? to_model_limits(*j.limits) : unbounded(std::nullopt);
        break;
      case JointKind::slider:
        spec.type = JointType::prismatic;
        spec.limits = to_model_limits(*j.limits);
        break;
      case JointKind::ball: spec.type = JointType::ball; break;
      case JointKind::planar:
      case JointKind::cylindrical: throw std::logic_error("rejected by check_convertible");
    }
    out_.model.joints.push_back(std::move(spec));
  }

  const assembly::AssemblyDoc& doc_;
  const kingraph::KinGraph& graph_;
  const kingraph::NameMap& names_;
  const ConvertOptions& opts_;
  kingraph::NameAllocator allocator_;
  std::map<std::string, Transform> frame_;  // component id → link frame in the assembly frame
  Conversion out_;
};

}  // namespace

Conversion assembly_to_model(const assembly::AssemblyDoc& doc, const kingraph::KinGraph& graph,
                             const kingraph::NameMap& names, const ConvertOptions& opts) {
  return Builder(doc, graph, names, opts).run();
}

model::RobotModel urdf_to_sdf(const model::RobotModel& m) {
  model::RobotModel out = model::to_model_frame(m);
  for (auto& j : out.joints) {
    if (j.type != JointType::continuous) continue;
    j.type = JointType::revolute;
    j.limits = unbounded(j.limits);
  }
  return out;
}

model::RobotModel sdf_to_urdf(const model::RobotModel& m) {
  for (const auto& j : m.joints) {
    if (j.type == JointType::ball) {
      throw UnsupportedJointError("URDF has no ball joint type: joint '" + j.name + "'");
    }
  }
  model::RobotModel out = model::to_chained(m);
  for (auto& j : out.joints) {
    if (j.type == JointType::revolute &&
        (!j.limits || (j.limits->lower <= -format::kSdfUnbounded && j.limits->upper >= format::kSdfUnbounded))) {
      j.type = JointType::continuous;
      if (j.limits && (j.limits->effort != -1.0 || j.limits->velocity != -1.0)) {
        j.limits = model::Limits{0.0, 0.0, j.limits->effort, j.limits->velocity};
      } else {
        j.limits.reset();
      }
    } else if (j.type == JointType::prismatic && !j.limits) {
      throw DomainError("URDF requires limits on prismatic joint '" + j.name + "'");
    }
  }
  return out;
}

}  // namespace rdf_forge::convert
