#include "format_common.hpp"

#include <set>

namespace rdf_forge::format {

using namespace detail;
using model::JointType;
using spatial::Vec3;

namespace {

void write_origin(xml::Writer& w, const spatial::Transform& t) {
  w.empty("origin", {{"xyz", vec_text(t.translation())}, {"rpy", rpy_text(t.rotation())}});
}

void write_geometry(xml::Writer& w, const model::Geometry& g, const std::string& model_name,
                    const EmitOptions& opts) {
  w.open("geometry");
  if (const auto* m = std::get_if<model::MeshGeometry>(&g)) {
    xml::Writer::Attributes attrs{{"filename", mesh_filename(m->filename, model_name, opts)}};
    if (m->scale != Vec3::Ones()) attrs.emplace_back("scale", vec_text(m->scale));
    w.empty("mesh", attrs);
  } else if (const auto* b = std::get_if<model::BoxGeometry>(&g)) {
    w.empty("box", {{"size", vec_text(b->size)}});
  } else if (const auto* c = std::get_if<model::CylinderGeometry>(&g)) {
    w.empty("cylinder", {{"radius", format_number(c->radius)}, {"length", format_number(c->length)}});
  } else {
    w.empty("sphere", {{"radius", format_number(std::get<model::SphereGeometry>(g).radius)}});
  }
  w.close();
}

void check_urdf_representable(const model::RobotModel& m) {
  if (m.framing != model::Framing::chained) {
    throw std::invalid_argument("emit_urdf: model must use chained framing");
  }
  for (const auto& j : m.joints) {
    if (j.type == JointType::ball) {
      throw UnsupportedJointError("URDF has no ball joint type: joint '" + j.name + "'");
    }
    if ((j.type == JointType::revolute || j.type == JointType::prismatic) && !j.limits) {
      throw DomainError("URDF requires <limit> on " + std::string(model::to_string(j.type)) + " joint '" +
                        j.name + "'");
    }
  }
  const auto g = model::topology(m);
  if (!g.loop_edges.empty()) {
    std::string list;
    for (const auto& id : g.loop_edges) list += (list.empty() ? "" : ", ") + id;
    throw ClosedLoopError("URDF only describes tree-structured robots; closed kinematic loop through joint(s) " +
                              list + " (export SDF instead)",
                          g.loop_edges);
  }
  if (!g.unreachable.empty()) {
    throw GraphError("URDF requires a single connected tree; unreachable link(s): " + g.unreachable.front(),
                     g.unreachable);
  }
  for (const auto& e : g.spanning_edges) {
    if (e.reversed) throw GraphError("URDF requires one parent per link; link '" + e.parent + "' has two", {e.parent});
  }
}

}  // namespace

std::string emit_urdf(const model::RobotModel& m, const EmitOptions& opts) {
  check_urdf_representable(m);
  xml::Writer w;
  if (opts.stamp) w.comment(*opts.stamp);
  w.open("robot", {{"name", m.name}});
  for (const auto& l : m.links) {
    if (!l.inertial && l.visuals.empty() && l.collisions.empty()) {
      w.empty("link", {{"name", l.name}});
      continue;
    }
    w.open("link", {{"name", l.name}});
    if (l.inertial) {
      const auto& in = *l.inertial;
      w.open("inertial");
      write_origin(w, in.origin);
      w.empty("mass", {{"value", format_number(in.mass)}});
      w.empty("inertia", {{"ixx", format_number(in.inertia.ixx)},
                          {"ixy", format_number(in.inertia.ixy)},
                          {"ixz", format_number(in.inertia.ixz)},
                          {"iyy", format_number(in.inertia.iyy)},
                          {"iyz", format_number(in.inertia.iyz)},
                          {"izz", format_number(in.inertia.izz)}});
      w.close();
    }
    for (const auto& v : l.visuals) {
      w.open("visual");
      write_origin(w, v.origin);
      write_geometry(w, v.geometry, m.name, opts);
      w.close();
    }
    for (const auto& c : l.collisions) {
      w.open("collision");
      write_origin(w, c.origin);
      write_geometry(w, c.geometry, m.name, opts);
      w.close();
    }
    w.close();
  }
  for (const auto& j : m.joints) {
    w.open("joint", {{"name", j.name}, {"type", std::string(model::to_string(j.type))}});
    write_origin(w, j.origin);
    w.empty("parent", {{"link", j.parent}});
    w.empty("child", {{"link", j.child}});
    if (model::has_axis(j.type) && j.axis) w.empty("axis", {{"xyz", vec_text(*j.axis)}});
    if (j.limits) {
      const auto& lim = *j.limits;
      if (j.type == JointType::continuous && lim.lower == 0.0 && lim.upper == 0.0) {
        w.empty("limit", {{"effort", format_number(lim.effort)}, {"velocity", format_number(lim.velocity)}});
      } else {
        w.empty("limit", {{"lower", format_number(lim.lower)},
                          {"upper", format_number(lim.upper)},
                          {"effort", format_number(lim.effort)},
                          {"velocity", format_number(lim.velocity)}});
      }
    }
    if (j.dynamics.damping != 0.0 || j.dynamics.friction != 0.0) {
      w.empty("dynamics", {{"damping", format_number(j.dynamics.damping)},
                           {"friction", format_number(j.dynamics.friction)}});
    }
    w.close();
  }
  return w.finish();
}

namespace {

spatial::Transform parse_origin(const xml::Element* e) {
  if (!e) return {};
  return pose_from(vec_attribute(*e, "xyz", Vec3::Zero()), vec_attribute(*e, "rpy", Vec3::Zero()));
}

model::Geometry parse_geometry(const xml::Element& parent) {
  const auto* g = parent.child("geometry");
  if (!g) fail_at(parent, "<" + parent.name + "> is missing <geometry>");
  for (const auto& shape : g->children) {
    if (shape.name == "mesh") {
      return model::MeshGeometry{required_attribute(shape, "filename"), vec_attribute(shape, "scale", Vec3::Ones())};
    }
    if (shape.name == "box") {
      const auto n = number_list(shape, required_attribute(shape, "size"), 3, "box size");
      return model::BoxGeometry{Vec3(n[0], n[1], n[2])};
    }
    if (shape.name == "cylinder") {
      return model::CylinderGeometry{number_attribute(shape, "radius", std::nullopt),
                                     number_attribute(shape, "length", std::nullopt)};
    }
    if (shape.name == "sphere") return model::SphereGeometry{number_attribute(shape, "radius", std::nullopt)};
  }
  fail_at(*g, "<geometry> holds no supported shape (mesh, box, cylinder, sphere)");
}

model::Link parse_link(const xml::Element& e, Warnings* warnings) {
  model::Link link;
  link.name = required_attribute(e, "name");
  for (const auto& c : e.children) {
    if (c.name == "inertial") {
      model::Inertial in;
      in.origin = parse_origin(c.child("origin"));
      const auto* mass = c.child("mass");
      if (!mass) fail_at(c, "<inertial> is missing <mass>");
      in.mass = number_attribute(*mass, "value", std::nullopt);
      const auto* inertia = c.child("inertia");
      if (!inertia) fail_at(c, "<inertial> is missing <inertia>");
      in.inertia.ixx = number_attribute(*inertia, "ixx", std::nullopt);
      in.inertia.ixy = number_attribute(*inertia, "ixy", std::nullopt);
      in.inertia.ixz = number_attribute(*inertia, "ixz", std::nullopt);
      in.inertia.iyy = number_attribute(*inertia, "iyy", std::nullopt);
      in.inertia.iyz = number_attribute(*inertia, "iyz", std::nullopt);
      in.inertia.izz = number_attribute(*inertia, "izz", std::nullopt);
      link.inertial = in;
    } else if (c.name == "visual" || c.name == "collision") {
      model::GeometryElement g{parse_origin(c.child("origin")), parse_geometry(c)};
      (c.name == "visual" ? link.visuals : link.collisions).push_back(std::move(g));
    } else {
      warn(warnings, c, "link '" + link.name + "'");
    }
  }
  return link;
}

model::JointSpec parse_joint(const xml::Element& e, Warnings* warnings) {
  model::JointSpec j;
  j.name = required_attribute(e, "name");
  const auto& type = required_attribute(e, "type");
  const auto t = model::joint_type_from_string(type);
  if (!t || *t == JointType::ball) fail_at(e, "unsupported URDF joint type '" + type + "' on joint '" + j.name + "'");
  j.type = *t;
  j.origin = parse_origin(e.child("origin"));
  for (auto [tag, target] : {std::pair{"parent", &j.parent}, std::pair{"child", &j.child}}) {
    const auto* p = e.child(tag);
    if (!p) fail_at(e, "joint '" + j.name + "' is missing <" + tag + ">");
    *target = required_attribute(*p, "link");
  }
  if (model::has_axis(j.type)) {
    const auto* axis = e.child("axis");
    j.axis = axis ? vec_attribute(*axis, "xyz", Vec3::UnitX()) : Vec3::UnitX();
  }
  if (const auto* lim = e.child("limit")) {
    model::Limits l;
    l.lower = number_attribute(*lim, "lower", 0.0);
    l.upper = number_attribute(*lim, "upper", 0.0);
    l.effort = number_attribute(*lim, "effort", std::nullopt);
    l.velocity = number_attribute(*lim, "velocity", std::nullopt);
    j.limits = l;
  } else if (j.type == JointType::revolute || j.type == JointType::prismatic) {
    fail_at(e, std::string(model::to_string(j.type)) + " joint '" + j.name + "' requires <limit>");
  }
  if (const auto* d = e.child("dynamics")) {
    j.dynamics.damping = number_attribute(*d, "damping", 0.0);
    j.dynamics.friction = number_attribute(*d, "friction", 0.0);
  }
  for (const auto& c : e.children) {
    if (c.name != "origin" && c.name != "parent" && c.name != "child" && c.name != "axis" && c.name != "limit" &&
        c.name != "dynamics") {
      warn(warnings, c, "joint '" + j.name + "'");
    }
  }
  return j;
}

}  // namespace

model::RobotModel parse_urdf(std::string_view text, Warnings* warnings) {
  const xml::Element root = xml::parse(text);
  if (root.name != "robot") fail_at(root, "expected <robot> root element, found <" + root.name + ">");
  model::RobotModel m;
  m.framing = model::Framing::chained;
  m.name = required_attribute(root, "name");
  std::set<std::string> link_names, joint_names;
  std::vector<const xml::Element*> joint_elements;
  for (const auto& c : root.children) {
    if (c.name == "link") {
      m.links.push_back(parse_link(c, warnings));
      claim(link_names, m.links.back().name, c, "link");
    } else if (c.name == "joint") {
      m.joints.push_back(parse_joint(c, warnings));
      claim(joint_names, m.joints.back().name, c, "joint");
      joint_elements.push_back(&c);
    } else {
      warn(warnings, c, "robot");
    }
  }
  for (std::size_t i = 0; i < m.joints.size(); ++i) {
    for (const auto* ref : {&m.joints[i].parent, &m.joints[i].child}) {
      if (!link_names.count(*ref)) {
        fail_at(*joint_elements[i], "joint '" + m.joints[i].name + "' references unknown link '" + *ref + "'");
      }
    }
  }
  return m;
}

}  // namespace rdf_forge::format
