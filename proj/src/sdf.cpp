#include "format_common.hpp"

#include <set>

namespace rdf_forge::format {

using namespace detail;
using model::JointType;
using spatial::Vec3;

namespace {

std::string pose_text(const spatial::Transform& t) {
  const auto rpy = spatial::rot_to_rpy(t.rotation());
  const Vec3& p = t.translation();
  return format_numbers({p.x(), p.y(), p.z(), rpy.roll, rpy.pitch, rpy.yaw});
}

void write_geometry(xml::Writer& w, const model::Geometry& g, const std::string& model_name,
                    const EmitOptions& opts) {
  w.open("geometry");
  if (const auto* m = std::get_if<model::MeshGeometry>(&g)) {
    w.open("mesh");
    w.text("uri", mesh_filename(m->filename, model_name, opts));
    if (m->scale != Vec3::Ones()) w.text("scale", vec_text(m->scale));
    w.close();
  } else if (const auto* b = std::get_if<model::BoxGeometry>(&g)) {
    w.open("box");
    w.text("size", vec_text(b->size));
    w.close();
  } else if (const auto* c = std::get_if<model::CylinderGeometry>(&g)) {
    w.open("cylinder");
    w.text("radius", format_number(c->radius));
    w.text("length", format_number(c->length));
    w.close();
  } else {
    w.open("sphere");
    w.text("radius", format_number(std::get<model::SphereGeometry>(g).radius));
    w.close();
  }
  w.close();
}

void write_elements(xml::Writer& w, const std::vector<model::GeometryElement>& elements, const std::string& tag,
                    const std::string& link, const std::string& model_name, const EmitOptions& opts) {
  for (std::size_t i = 0; i < elements.size(); ++i) {
    std::string name = link + "_" + tag;
    if (i) name += "_" + std::to_string(i + 1);
    w.open(tag, {{"name", name}});
    w.text("pose", pose_text(elements[i].origin));
    write_geometry(w, elements[i].geometry, model_name, opts);
    w.close();
  }
}

bool sdf_joint_type(JointType t) {
  return t == JointType::fixed || t == JointType::revolute || t == JointType::continuous ||
         t == JointType::prismatic || t == JointType::ball;
}

}  // namespace

std::string emit_sdf(const model::RobotModel& m, const EmitOptions& opts) {
  if (m.framing != model::Framing::model_frame) {
    throw std::invalid_argument("emit_sdf: model must use model_frame framing");
  }
  for (const auto& j : m.joints) {
    if (!sdf_joint_type(j.type)) {
      throw UnsupportedJointError("SDF has no " + std::string(model::to_string(j.type)) + " joint type: joint '" +
                                  j.name + "'");
    }
  }
  xml::Writer w;
  if (opts.stamp) w.comment(*opts.stamp);
  w.open("sdf", {{"version", "1.7"}});
  w.open("model", {{"name", m.name}});
  for (const auto& l : m.links) {
    w.open("link", {{"name", l.name}});
    w.text("pose", pose_text(l.pose_in_model));
    if (l.inertial) {
      const auto& in = *l.inertial;
      w.open("inertial");
      w.text("pose", pose_text(in.origin));
      w.text("mass", format_number(in.mass));
      w.open("inertia");
      w.text("ixx", format_number(in.inertia.ixx));
      w.text("ixy", format_number(in.inertia.ixy));
      w.text("ixz", format_number(in.inertia.ixz));
      w.text("iyy", format_number(in.inertia.iyy));
      w.text("iyz", format_number(in.inertia.iyz));
      w.text("izz", format_number(in.inertia.izz));
      w.close();
      w.close();
    }
    write_elements(w, l.visuals, "visual", l.name, m.name, opts);
    write_elements(w, l.collisions, "collision", l.name, m.name, opts);
    w.close();
  }
  for (const auto& j : m.joints) {
    w.open("joint", {{"name", j.name}, {"type", std::string(model::to_string(j.type))}});
    w.text("parent", j.parent);
    w.text("child", j.child);
    w.text("pose", pose_text(j.origin));
    if (model::has_axis(j.type) && j.axis) {
      w.open("axis");
      w.text("xyz", vec_text(*j.axis));
      if (j.limits) {
        w.open("limit");
        w.text("lower", format_number(j.limits->lower));
        w.text("upper", format_number(j.limits->upper));
        w.text("effort", format_number(j.limits->effort));
        w.text("velocity", format_number(j.limits->velocity));
        w.close();
      }
      if (j.dynamics.damping != 0.0 || j.dynamics.friction != 0.0) {
        w.open("dynamics");
        w.text("damping", format_number(j.dynamics.damping));
        w.text("friction", format_number(j.dynamics.friction));
        w.close();
      }
      w.close();
    }
    w.close();
  }
  return w.finish();
}

namespace {

double number_text(const xml::Element& e) {
  const auto v = parse_number(e.text);
  if (!v) fail_at(e, "<" + e.name + "> must hold a number, got '" + e.text + "'");
  return *v;
}

double number_child(const xml::Element& parent, std::string_view tag, double fallback) {
  const auto* c = parent.child(tag);
  return c ? number_text(*c) : fallback;
}

Vec3 vec_text_of(const xml::Element& e) {
  const auto n = number_list(e, e.text, 3, "<" + e.name + ">");
  return {n[0], n[1], n[2]};
}

void reject_frame_attributes(const xml::Element& e) {
  for (const char* key : {"relative_to", "expressed_in"}) {
    if (e.attribute(key)) {
      fail_at(e, "attribute '" + std::string(key) + "' on <" + e.name + "> is not supported");
    }
  }
}

spatial::Transform parse_pose(const xml::Element* e) {
  if (!e) return {};
  reject_frame_attributes(*e);
  const auto n = number_list(*e, e->text, 6, "<pose>");
  return pose_from({n[0], n[1], n[2]}, {n[3], n[4], n[5]});
}

std::string text_child(const xml::Element& parent, std::string_view tag) {
  const auto* c = parent.child(tag);
  if (!c) fail_at(parent, "<" + parent.name + "> is missing <" + std::string(tag) + ">");
  std::string s = c->text;
  const auto b = s.find_first_not_of(" \t\r\n");
  const auto e = s.find_last_not_of(" \t\r\n");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

model::Geometry parse_geometry(const xml::Element& parent) {
  const auto* g = parent.child("geometry");
  if (!g) fail_at(parent, "<" + parent.name + "> is missing <geometry>");
  for (const auto& shape : g->children) {
    if (shape.name == "mesh") {
      const auto* scale = shape.child("scale");
      return model::MeshGeometry{text_child(shape, "uri"), scale ? vec_text_of(*scale) : Vec3::Ones()};
    }
    if (shape.name == "box") {
      const auto* size = shape.child("size");
      return model::BoxGeometry{size ? vec_text_of(*size) : Vec3::Ones()};
    }
    if (shape.name == "cylinder") {
      return model::CylinderGeometry{number_child(shape, "radius", 1.0), number_child(shape, "length", 1.0)};
    }
    if (shape.name == "sphere") return model::SphereGeometry{number_child(shape, "radius", 1.0)};
  }
  fail_at(*g, "<geometry> holds no supported shape (mesh, box, cylinder, sphere)");
}

model::Link parse_link(const xml::Element& e, Warnings* warnings) {
  model::Link link;
  link.name = required_attribute(e, "name");
  for (const auto& c : e.children) {
    if (c.name == "pose") {
      link.pose_in_model = parse_pose(&c);
    } else if (c.name == "inertial") {
      model::Inertial in;
      in.origin = parse_pose(c.child("pose"));
      in.mass = number_child(c, "mass", 1.0);
      in.inertia = spatial::InertiaTensor::diagonal(1.0, 1.0, 1.0);
      if (const auto* t = c.child("inertia")) {
        in.inertia.ixx = number_child(*t, "ixx", 1.0);
        in.inertia.iyy = number_child(*t, "iyy", 1.0);
        in.inertia.izz = number_child(*t, "izz", 1.0);
        in.inertia.ixy = number_child(*t, "ixy", 0.0);
        in.inertia.ixz = number_child(*t, "ixz", 0.0);
        in.inertia.iyz = number_child(*t, "iyz", 0.0);
      }
      link.inertial = in;
    } else if (c.name == "visual" || c.name == "collision") {
      model::GeometryElement g{parse_pose(c.child("pose")), parse_geometry(c)};
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
  if (!t || !sdf_joint_type(*t)) fail_at(e, "unsupported SDF joint type '" + type + "' on joint '" + j.name + "'");
  j.type = *t;
  j.parent = text_child(e, "parent");
  j.child = text_child(e, "child");
  j.origin = parse_pose(e.child("pose"));
  const auto* axis = e.child("axis");
  if (model::has_axis(j.type)) {
    j.axis = Vec3::UnitZ();
    if (axis) {
      if (const auto* xyz = axis->child("xyz")) {
        reject_frame_attributes(*xyz);
        j.axis = vec_text_of(*xyz);
      }
      if (const auto* lim = axis->child("limit")) {
        j.limits = model::Limits{number_child(*lim, "lower", -kSdfUnbounded), number_child(*lim, "upper", kSdfUnbounded),
                                 number_child(*lim, "effort", -1.0), number_child(*lim, "velocity", -1.0)};
      }
      if (const auto* d = axis->child("dynamics")) {
        j.dynamics.damping = number_child(*d, "damping", 0.0);
        j.dynamics.friction = number_child(*d, "friction", 0.0);
      }
      for (const auto& c : axis->children) {
        if (c.name != "xyz" && c.name != "limit" && c.name != "dynamics") warn(warnings, c, "axis of '" + j.name + "'");
      }
    }
  } else if (axis) {
    warn(warnings, *axis, "joint '" + j.name + "'");
  }
  for (const auto& c : e.children) {
    if (c.name != "parent" && c.name != "child" && c.name != "pose" && c.name != "axis") {
      warn(warnings, c, "joint '" + j.name + "'");
    }
  }
  return j;
}

}  // namespace

model::RobotModel parse_sdf(std::string_view text, Warnings* warnings) {
  const xml::Element root = xml::parse(text);
  if (root.name != "sdf") fail_at(root, "expected <sdf> root element, found <" + root.name + ">");
  const auto& version = required_attribute(root, "version");
  const auto v = parse_number(version);
  if (!v || *v < 1.4) fail_at(root, "SDF version '" + version + "' is not supported (need 1.4 or later)");
  const auto* mod = root.child("model");
  if (!mod) fail_at(root, "<sdf> holds no <model>");
  for (const auto& c : root.children) {
    if (&c != mod) warn(warnings, c, "sdf");
  }

  model::RobotModel m;
  m.framing = model::Framing::model_frame;
  m.name = required_attribute(*mod, "name");
  std::set<std::string> link_names, joint_names;
  std::vector<const xml::Element*> joint_elements;
  for (const auto& c : mod->children) {
    if (c.name == "link") {
      m.links.push_back(parse_link(c, warnings));
      claim(link_names, m.links.back().name, c, "link");
    } else if (c.name == "joint") {
      m.joints.push_back(parse_joint(c, warnings));
      claim(joint_names, m.joints.back().name, c, "joint");
      joint_elements.push_back(&c);
    } else {
      warn(warnings, c, "model '" + m.name + "'");
    }
  }
  for (std::size_t i = 0; i < m.joints.size(); ++i) {
    const auto& j = m.joints[i];
    if (!link_names.count(j.parent) && j.parent != model::kWorldLink) {
      fail_at(*joint_elements[i], "joint '" + j.name + "' references unknown link '" + j.parent + "'");
    }
    if (!link_names.count(j.child)) {
      fail_at(*joint_elements[i], "joint '" + j.name + "' references unknown link '" + j.child + "'");
    }
  }
  return m;
}

std::string emit_model_config(const ModelConfig& config) {
  if (config.name.empty()) throw std::invalid_argument("emit_model_config: empty model name");
  xml::Writer w;
  w.open("model");
  w.text("name", config.name);
  w.text("version", "1.0");
  w.text("sdf", config.sdf_file, {{"version", "1.7"}});
  if (!config.author.empty()) {
    w.open("author");
    w.text("name", config.author);
    w.close();
  }
  if (!config.description.empty()) w.text("description", config.description);
  return w.finish();
}

ModelConfig parse_model_config(std::string_view text) {
  const xml::Element root = xml::parse(text);
  if (root.name != "model") fail_at(root, "expected <model> root element, found <" + root.name + ">");
  ModelConfig config;
  config.name = text_child(root, "name");
  config.sdf_file = text_child(root, "sdf");
  if (const auto* author = root.child("author"); author && author->child("name")) {
    config.author = text_child(*author, "name");
  }
  if (root.child("description")) config.description = text_child(root, "description");
  return config;
}

}  // namespace rdf_forge::format
