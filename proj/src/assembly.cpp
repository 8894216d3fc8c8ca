#include "rdf_forge/assembly.hpp"

#include "rdf_forge/errors.hpp"
#include "rdf_forge/stl.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iterator>
#include <set>

namespace rdf_forge::assembly {

using nlohmann::json;

double unit_factor(LengthUnit unit) {
  switch (unit) {
    case LengthUnit::mm: return 0.001;
    case LengthUnit::cm: return 0.01;
    case LengthUnit::m: return 1.0;
  }
  return 1.0;
}

std::string_view to_string(LengthUnit unit) {
  switch (unit) {
    case LengthUnit::mm: return "mm";
    case LengthUnit::cm: return "cm";
    case LengthUnit::m: return "m";
  }
  return "m";
}

std::string_view to_string(JointKind kind) {
  switch (kind) {
    case JointKind::rigid: return "rigid";
    case JointKind::revolute: return "revolute";
    case JointKind::slider: return "slider";
    case JointKind::cylindrical: return "cylindrical";
    case JointKind::ball: return "ball";
    case JointKind::planar: return "planar";
  }
  return "rigid";
}

std::optional<JointKind> joint_kind_from_string(std::string_view s) {
  for (auto k : {JointKind::rigid, JointKind::revolute, JointKind::slider, JointKind::cylindrical,
                 JointKind::ball, JointKind::planar}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

bool needs_axis(JointKind kind) {
  return kind == JointKind::revolute || kind == JointKind::slider || kind == JointKind::cylindrical ||
         kind == JointKind::planar;
}

const ComponentRec* AssemblyDoc::find_component(std::string_view id) const {
  for (const auto& c : components) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

const JointRec* AssemblyDoc::find_joint(std::string_view id) const {
  for (const auto& j : joints) {
    if (j.id == id) return &j;
  }
  return nullptr;
}

namespace {

/// Walks a JSON value while tracking its path for error messages.
class Node {
 public:
  Node(const json& value, std::string path) : value_(value), path_(std::move(path)) {}

  const std::string& path() const { return path_; }
  const json& raw() const { return value_; }

  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, path_); }

  Node field(const std::string& key) const {
    expect_object();
    auto it = value_.find(key);
    if (it == value_.end()) throw ParseError("missing required field", join(key));
    return {*it, join(key)};
  }

  std::optional<Node> optional_field(const std::string& key) const {
    expect_object();
    auto it = value_.find(key);
    if (it == value_.end() || it->is_null()) return std::nullopt;
    return Node(*it, join(key));
  }

  void allow_only(std::initializer_list<std::string_view> keys) const {
    expect_object();
    for (auto it = value_.begin(); it != value_.end(); ++it) {
      bool known = false;
      for (auto k : keys) known = known || it.key() == k;
      if (!known) throw ParseError("unknown field", join(it.key()));
    }
  }

  std::vector<Node> elements() const {
    if (!value_.is_array()) fail("expected an array");
    std::vector<Node> out;
    for (std::size_t i = 0; i < value_.size(); ++i) {
      out.emplace_back(value_[i], path_ + "[" + std::to_string(i) + "]");
    }
    return out;
  }

  std::string string() const {
    if (!value_.is_string()) fail("expected a string");
    return value_.get<std::string>();
  }

  std::string identifier() const {
    auto s = string();
    if (s.empty()) fail("must not be empty");
    return s;
  }

  double number() const {
    if (!value_.is_number()) fail("expected a number");
    const double v = value_.get<double>();
    if (!std::isfinite(v)) fail("expected a finite number");
    return v;
  }

  std::vector<double> numbers(std::size_t count) const {
    if (!value_.is_array() || value_.size() != count) {
      fail("expected an array of " + std::to_string(count) + " numbers");
    }
    std::vector<double> out;
    for (const auto& e : elements()) out.push_back(e.number());
    return out;
  }

  Vec3 vec3() const {
    const auto v = numbers(3);
    return {v[0], v[1], v[2]};
  }

 private:
  void expect_object() const {
    if (!value_.is_object()) fail("expected an object");
  }
  std::string join(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  const json& value_;
  std::string path_;
};

Transform parse_transform(const Node& node, double length_factor) {
  node.allow_only({"rotation", "translation"});
  const auto r = node.field("rotation").numbers(9);
  spatial::Mat3 rot;
  rot << r[0], r[1], r[2], r[3], r[4], r[5], r[6], r[7], r[8];
  if (!spatial::is_rotation(rot)) {
    node.field("rotation").fail("not a proper rotation (orthonormal, det +1 within 1e-9)");
  }
  const Vec3 t = node.field("translation").vec3() * length_factor;
  return {rot, t};
}

MeshRef parse_mesh_ref(const Node& node, const std::filesystem::path& base_dir, double length_factor) {
  MeshRef ref;
  std::string path;
  Vec3 scale = Vec3::Ones();
  if (node.raw().is_string()) {
    path = node.identifier();
  } else {
    node.allow_only({"path", "scale"});
    path = node.field("path").identifier();
    if (auto s = node.optional_field("scale")) {
      scale = s->raw().is_array() ? s->vec3() : Vec3::Constant(s->number());
      if (!(scale.minCoeff() > 0.0)) s->fail("scale must be positive");
    }
  }
  ref.path = (base_dir / path).lexically_normal();
  ref.scale = scale * length_factor;
  return ref;
}

PhysSource parse_phys(const Node& node, double length_factor) {
  if (node.optional_field("density")) {
    node.allow_only({"density"});
    const auto d = node.field("density");
    DensityPhys p{d.number()};
    if (!(p.density > 0.0)) d.fail("density must be positive");
    return p;
  }
  node.allow_only({"mass", "com", "inertia"});
  ExplicitPhys p;
  const auto m = node.field("mass");
  p.mass = m.number();
  if (!(p.mass > 0.0)) m.fail("mass must be positive");
  p.com = node.field("com").vec3() * length_factor;
  const auto in = node.field("inertia").numbers(6);
  const double f2 = length_factor * length_factor;
  p.inertia_com = {in[0] * f2, in[1] * f2, in[2] * f2, in[3] * f2, in[4] * f2, in[5] * f2};
  return p;
}

JointLimits parse_limits(const Node& node, bool linear, double length_factor) {
  node.allow_only({"lower", "upper", "effort", "velocity"});
  const double f = linear ? length_factor : 1.0;
  JointLimits l;
  l.lower = node.field("lower").number() * f;
  l.upper = node.field("upper").number() * f;
  l.effort = node.field("effort").number();
  l.velocity = node.field("velocity").number() * f;
  if (l.lower > l.upper) node.fail("lower limit exceeds upper limit");
  if (l.effort < 0.0) node.field("effort").fail("effort must be non-negative");
  if (l.velocity < 0.0) node.field("velocity").fail("velocity must be non-negative");
  return l;
}

}  // namespace

AssemblyDoc parse_assembly(std::string_view text, const std::filesystem::path& base_dir) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what(), "byte " + std::to_string(e.byte));
  }
  const Node top(root, "");
  top.allow_only({"name", "length_unit", "grounded", "author", "description", "components", "joints"});

  AssemblyDoc doc;
  doc.name = top.field("name").identifier();
  {
    const auto unit = top.field("length_unit");
    const auto s = unit.string();
    if (s == "mm") doc.length_unit = LengthUnit::mm;
    else if (s == "cm") doc.length_unit = LengthUnit::cm;
    else if (s == "m") doc.length_unit = LengthUnit::m;
    else unit.fail("unknown length unit '" + s + "' (expected mm, cm or m)");
  }
  const double f = unit_factor(doc.length_unit);
  doc.grounded = top.field("grounded").identifier();
  if (auto a = top.optional_field("author")) doc.author = a->string();
  if (auto d = top.optional_field("description")) doc.description = d->string();

  std::set<std::string> component_ids;
  for (const auto& c : top.field("components").elements()) {
    c.allow_only({"id", "name", "world_transform", "phys", "visual_mesh", "collision_mesh"});
    ComponentRec rec;
    rec.id = c.field("id").identifier();
    if (!component_ids.insert(rec.id).second) c.field("id").fail("duplicate component id '" + rec.id + "'");
    rec.name = c.field("name").string();
    rec.world_transform = parse_transform(c.field("world_transform"), f);
    rec.phys = parse_phys(c.field("phys"), f);
    if (auto v = c.optional_field("visual_mesh")) rec.visual_mesh = parse_mesh_ref(*v, base_dir, f);
    if (auto v = c.optional_field("collision_mesh")) rec.collision_mesh = parse_mesh_ref(*v, base_dir, f);
    if (!rec.collision_mesh) rec.collision_mesh = rec.visual_mesh;
    if (std::holds_alternative<DensityPhys>(rec.phys) && !rec.collision_mesh) {
      c.field("phys").fail("density source requires a visual or collision mesh");
    }
    doc.components.push_back(std::move(rec));
  }
  if (!component_ids.count(doc.grounded)) {
    top.field("grounded").fail("dangling reference: no component '" + doc.grounded + "'");
  }

  std::set<std::string> joint_ids;
  for (const auto& j : top.field("joints").elements()) {
    j.allow_only({"id", "name", "kind", "parent", "child", "origin_world", "axis_world", "limits"});
    JointRec rec;
    rec.id = j.field("id").identifier();
    if (!joint_ids.insert(rec.id).second) j.field("id").fail("duplicate joint id '" + rec.id + "'");
    rec.name = j.field("name").string();
    {
      const auto k = j.field("kind");
      const auto kind = joint_kind_from_string(k.string());
      if (!kind) k.fail("unknown joint kind '" + k.string() + "'");
      rec.kind = *kind;
    }
    for (auto [key, target] : {std::pair{"parent", &rec.parent}, std::pair{"child", &rec.child}}) {
      const auto n = j.field(key);
      *target = n.identifier();
      if (!component_ids.count(*target)) n.fail("dangling reference: no component '" + *target + "'");
    }
    if (rec.parent == rec.child) j.fail("joint connects component '" + rec.parent + "' to itself");
    rec.origin_world = parse_transform(j.field("origin_world"), f);
    if (auto a = j.optional_field("axis_world")) {
      try {
        rec.axis_world = UnitAxis::normalized(a->vec3());
      } catch (const std::invalid_argument&) {
        a->fail("axis must be a non-zero vector");
      }
    } else if (needs_axis(rec.kind)) {
      j.fail(std::string(to_string(rec.kind)) + " joint requires axis_world");
    }
    const bool linear = rec.kind == JointKind::slider || rec.kind == JointKind::cylindrical;
    if (auto l = j.optional_field("limits")) {
      if (rec.kind == JointKind::rigid || rec.kind == JointKind::ball || rec.kind == JointKind::planar) {
        l->fail(std::string("limits are not applicable to ") + std::string(to_string(rec.kind)) + " joints");
      }
      rec.limits = parse_limits(*l, linear, f);
    } else if (linear) {
      j.fail(std::string(to_string(rec.kind)) + " joint requires limits for its sliding range");
    }
    doc.joints.push_back(std::move(rec));
  }
  return doc;
}

AssemblyDoc load_assembly(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file", path.string());
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  try {
    return parse_assembly(text, path.parent_path());
  } catch (const ParseError& e) {
    throw ParseError(e.what(), path.string());
  }
}

MeshLoader stl_loader() {
  return [](const std::filesystem::path& p) { return mesh::load_stl(p); };
}

AssemblyDoc resolve_physical(const AssemblyDoc& doc, const MeshLoader& loader) {
  AssemblyDoc out = doc;
  for (auto& c : out.components) {
    const auto* density = std::get_if<DensityPhys>(&c.phys);
    if (!density) continue;
    if (!c.collision_mesh) {
      throw MeshError("component '" + c.id + "': density source without a mesh");
    }
    mesh::TriMesh m;
    try {
      m = loader(c.collision_mesh->path);
    } catch (const Error& e) {
      throw MeshError("component '" + c.id + "': cannot load mesh: " + e.what());
    }
    try {
      const auto props = mesh::mass_properties(mesh::scale_mesh(m, c.collision_mesh->scale), density->density);
      c.phys = ExplicitPhys{props.mass, props.com, props.inertia_com};
    } catch (const MeshError& e) {
      throw MeshError("component '" + c.id + "' (" + c.collision_mesh->path.string() + "): " + e.what());
    }
  }
  return out;
}

const ExplicitPhys& explicit_phys(const ComponentRec& c) {
  const auto* p = std::get_if<ExplicitPhys>(&c.phys);
  if (!p) throw std::logic_error("component '" + c.id + "' has unresolved physical properties");
  return *p;
}

}  // namespace rdf_forge::assembly
