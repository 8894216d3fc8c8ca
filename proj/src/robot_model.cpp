#include "rdf_forge/robot_model.hpp"

#include "rdf_forge/errors.hpp"
#include "rdf_forge/number_format.hpp"

#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace rdf_forge::model {

std::string_view to_string(Framing f) {
  return f == Framing::chained ? "chained" : "model_frame";
}

std::string_view to_string(JointType t) {
  switch (t) {
    case JointType::fixed: return "fixed";
    case JointType::revolute: return "revolute";
    case JointType::continuous: return "continuous";
    case JointType::prismatic: return "prismatic";
    case JointType::planar: return "planar";
    case JointType::ball: return "ball";
  }
  return "fixed";
}

std::optional<JointType> joint_type_from_string(std::string_view s) {
  for (auto t : {JointType::fixed, JointType::revolute, JointType::continuous, JointType::prismatic,
                 JointType::planar, JointType::ball}) {
    if (to_string(t) == s) return t;
  }
  return std::nullopt;
}

bool has_axis(JointType t) {
  return t == JointType::revolute || t == JointType::continuous || t == JointType::prismatic ||
         t == JointType::planar;
}

bool is_single_dof(JointType t) {
  return t == JointType::revolute || t == JointType::continuous || t == JointType::prismatic;
}

const Link* RobotModel::find_link(std::string_view n) const {
  for (const auto& l : links) {
    if (l.name == n) return &l;
  }
  return nullptr;
}

Link* RobotModel::find_link(std::string_view n) {
  for (auto& l : links) {
    if (l.name == n) return &l;
  }
  return nullptr;
}

const JointSpec* RobotModel::find_joint(std::string_view n) const {
  for (const auto& j : joints) {
    if (j.name == n) return &j;
  }
  return nullptr;
}

const JointSpec* RobotModel::parent_joint(std::string_view link) const {
  for (const auto& j : joints) {
    if (j.child == link) return &j;
  }
  return nullptr;
}

kingraph::KinGraph topology(const RobotModel& m) {
  std::vector<std::string> nodes;
  bool uses_world = false;
  for (const auto& j : m.joints) uses_world = uses_world || j.parent == kWorldLink || j.child == kWorldLink;
  if (uses_world && !m.find_link(kWorldLink)) nodes.emplace_back(kWorldLink);
  for (const auto& l : m.links) nodes.push_back(l.name);
  if (nodes.empty()) return {};

  std::vector<kingraph::GraphEdge> edges;
  std::set<std::string> children;
  for (const auto& j : m.joints) {
    edges.push_back({j.name, j.parent, j.child});
    children.insert(j.child);
  }
  std::string root = nodes.front();
  if (!uses_world) {
    for (const auto& n : nodes) {
      if (!children.count(n)) {
        root = n;
        break;
      }
    }
  } else {
    root = std::string(kWorldLink);
  }
  return kingraph::analyze(std::move(nodes), std::move(edges), root);
}

namespace {

std::string joined(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : ", ") + s;
  return out;
}

/// Checks that the joint set describes one tree whose declared directions
/// all point away from the root.
kingraph::KinGraph require_tree(const RobotModel& m, const char* what) {
  auto g = topology(m);
  if (g.nodes.empty()) return g;
  if (!g.loop_edges.empty()) {
    throw ClosedLoopError(std::string(what) + ": closed kinematic loop through joint(s) " + joined(g.loop_edges),
                          g.loop_edges);
  }
  if (!g.unreachable.empty()) {
    throw GraphError(std::string(what) + ": links not connected to root '" + g.root + "': " + joined(g.unreachable),
                     g.unreachable);
  }
  for (const auto& e : g.spanning_edges) {
    if (e.reversed) {
      throw GraphError(std::string(what) + ": link '" + e.parent + "' has more than one parent joint", {e.parent});
    }
  }
  return g;
}

}  // namespace

RobotModel to_model_frame(const RobotModel& m) {
  if (m.framing != Framing::chained) throw std::invalid_argument("to_model_frame: model is not in chained framing");
  const auto g = require_tree(m, "to_model_frame");

  std::map<std::string, Transform> pose;
  if (!g.nodes.empty()) pose[g.root] = Transform::identity();
  for (const auto& e : g.spanning_edges) {
    pose[e.child] = spatial::compose(pose.at(e.parent), m.find_joint(e.id)->origin);
  }

  RobotModel out = m;
  out.framing = Framing::model_frame;
  // An inert root link named "world" is the URDF spelling of SDF's world frame.
  if (!out.links.empty() && g.root == kWorldLink) {
    const Link* w = out.find_link(kWorldLink);
    if (w && !w->inertial && w->visuals.empty() && w->collisions.empty()) {
      std::erase_if(out.links, [](const Link& l) { return l.name == kWorldLink; });
    }
  }
  for (auto& l : out.links) l.pose_in_model = pose.at(l.name);
  for (auto& j : out.joints) j.origin = Transform::identity();
  return out;
}

RobotModel to_chained(const RobotModel& m) {
  if (m.framing != Framing::model_frame) throw std::invalid_argument("to_chained: model is not in model_frame framing");
  const auto g = require_tree(m, "to_chained");

  RobotModel out = m;
  out.framing = Framing::chained;
  if (!g.nodes.empty() && g.root == kWorldLink && !out.find_link(kWorldLink)) {
    Link world;
    world.name = std::string(kWorldLink);
    out.links.insert(out.links.begin(), world);
  }

  // New link frame = old link pose composed with its parent joint's pose.
  std::map<std::string, Transform> frame;
  std::map<std::string, Transform> shift;  // old link frame → new link frame
  for (const auto& l : out.links) {
    const JointSpec* pj = m.parent_joint(l.name);
    shift[l.name] = pj ? pj->origin : Transform::identity();
    frame[l.name] = spatial::compose(l.pose_in_model, shift[l.name]);
  }
  for (auto& l : out.links) {
    const Transform back = spatial::inverse(shift.at(l.name));
    if (l.inertial) l.inertial->origin = spatial::compose(back, l.inertial->origin);
    for (auto& v : l.visuals) v.origin = spatial::compose(back, v.origin);
    for (auto& c : l.collisions) c.origin = spatial::compose(back, c.origin);
    l.pose_in_model = Transform::identity();
  }
  for (auto& j : out.joints) j.origin = spatial::relative(frame.at(j.parent), frame.at(j.child));
  return out;
}

namespace {

class Differ {
 public:
  explicit Differ(double tol) : tol_(tol) {}

  bool num(const std::string& what, double a, double b) {
    if (a == b || std::abs(a - b) <= tol_) return true;
    return fail(what + ": " + format_number(a) + " vs " + format_number(b));
  }
  bool vec(const std::string& what, const Vec3& a, const Vec3& b) {
    return num(what + ".x", a.x(), b.x()) && num(what + ".y", a.y(), b.y()) && num(what + ".z", a.z(), b.z());
  }
  bool pose(const std::string& what, const Transform& a, const Transform& b) {
    const double d = spatial::max_abs_diff(a, b);
    if (d <= tol_) return true;
    return fail(what + ": poses differ by " + format_number(d));
  }
  bool same(const std::string& what, const std::string& a, const std::string& b) {
    if (a == b) return true;
    return fail(what + ": '" + a + "' vs '" + b + "'");
  }
  bool fail(const std::string& message) {
    if (!diff_) diff_ = message;
    return false;
  }
  const std::optional<std::string>& diff() const { return diff_; }

 private:
  double tol_;
  std::optional<std::string> diff_;
};

bool compare_geometry(Differ& d, const std::string& what, const Geometry& a, const Geometry& b) {
  if (a.index() != b.index()) return d.fail(what + ": geometry kinds differ");
  if (const auto* ma = std::get_if<MeshGeometry>(&a)) {
    const auto& mb = std::get<MeshGeometry>(b);
    return d.same(what + ".filename", ma->filename, mb.filename) && d.vec(what + ".scale", ma->scale, mb.scale);
  }
  if (const auto* ba = std::get_if<BoxGeometry>(&a)) {
    return d.vec(what + ".size", ba->size, std::get<BoxGeometry>(b).size);
  }
  if (const auto* ca = std::get_if<CylinderGeometry>(&a)) {
    const auto& cb = std::get<CylinderGeometry>(b);
    return d.num(what + ".radius", ca->radius, cb.radius) && d.num(what + ".length", ca->length, cb.length);
  }
  return d.num(what + ".radius", std::get<SphereGeometry>(a).radius, std::get<SphereGeometry>(b).radius);
}

bool compare_elements(Differ& d, const std::string& what, const std::vector<GeometryElement>& a,
                      const std::vector<GeometryElement>& b) {
  if (a.size() != b.size()) return d.fail(what + ": counts differ");
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::string w = what + "[" + std::to_string(i) + "]";
    if (!d.pose(w + ".origin", a[i].origin, b[i].origin)) return false;
    if (!compare_geometry(d, w, a[i].geometry, b[i].geometry)) return false;
  }
  return true;
}

}  // namespace

std::optional<std::string> compare_models(const RobotModel& a, const RobotModel& b, double tol) {
  Differ d(tol);
  if (!d.same("name", a.name, b.name)) return d.diff();
  if (a.framing != b.framing) {
    d.fail("framing: " + std::string(to_string(a.framing)) + " vs " + std::string(to_string(b.framing)));
    return d.diff();
  }
  if (a.links.size() != b.links.size()) {
    d.fail("link count: " + std::to_string(a.links.size()) + " vs " + std::to_string(b.links.size()));
    return d.diff();
  }
  for (std::size_t i = 0; i < a.links.size(); ++i) {
    const auto& la = a.links[i];
    const auto& lb = b.links[i];
    const std::string w = "link '" + la.name + "'";
    if (!d.same("link[" + std::to_string(i) + "].name", la.name, lb.name)) return d.diff();
    if (la.inertial.has_value() != lb.inertial.has_value()) {
      d.fail(w + ": inertial present in only one model");
      return d.diff();
    }
    if (la.inertial) {
      const auto& ia = *la.inertial;
      const auto& ib = *lb.inertial;
      if (!d.num(w + ".mass", ia.mass, ib.mass) || !d.pose(w + ".inertial.origin", ia.origin, ib.origin) ||
          !d.num(w + ".ixx", ia.inertia.ixx, ib.inertia.ixx) || !d.num(w + ".iyy", ia.inertia.iyy, ib.inertia.iyy) ||
          !d.num(w + ".izz", ia.inertia.izz, ib.inertia.izz) || !d.num(w + ".ixy", ia.inertia.ixy, ib.inertia.ixy) ||
          !d.num(w + ".ixz", ia.inertia.ixz, ib.inertia.ixz) || !d.num(w + ".iyz", ia.inertia.iyz, ib.inertia.iyz)) {
        return d.diff();
      }
    }
    if (!compare_elements(d, w + ".visual", la.visuals, lb.visuals)) return d.diff();
    if (!compare_elements(d, w + ".collision", la.collisions, lb.collisions)) return d.diff();
    if (a.framing == Framing::model_frame && !d.pose(w + ".pose", la.pose_in_model, lb.pose_in_model)) {
      return d.diff();
    }
  }
  if (a.joints.size() != b.joints.size()) {
    d.fail("joint count: " + std::to_string(a.joints.size()) + " vs " + std::to_string(b.joints.size()));
    return d.diff();
  }
  for (std::size_t i = 0; i < a.joints.size(); ++i) {
    const auto& ja = a.joints[i];
    const auto& jb = b.joints[i];
    const std::string w = "joint '" + ja.name + "'";
    if (!d.same("joint[" + std::to_string(i) + "].name", ja.name, jb.name) ||
        !d.same(w + ".type", std::string(to_string(ja.type)), std::string(to_string(jb.type))) ||
        !d.same(w + ".parent", ja.parent, jb.parent) || !d.same(w + ".child", ja.child, jb.child) ||
        !d.pose(w + ".origin", ja.origin, jb.origin)) {
      return d.diff();
    }
    if (ja.axis.has_value() != jb.axis.has_value()) {
      d.fail(w + ": axis present in only one model");
      return d.diff();
    }
    if (ja.axis && !d.vec(w + ".axis", *ja.axis, *jb.axis)) return d.diff();
    if (ja.limits.has_value() != jb.limits.has_value()) {
      d.fail(w + ": limits present in only one model");
      return d.diff();
    }
    if (ja.limits) {
      const auto& la = *ja.limits;
      const auto& lb = *jb.limits;
      if (!d.num(w + ".lower", la.lower, lb.lower) || !d.num(w + ".upper", la.upper, lb.upper) ||
          !d.num(w + ".effort", la.effort, lb.effort) || !d.num(w + ".velocity", la.velocity, lb.velocity)) {
        return d.diff();
      }
    }
    if (!d.num(w + ".damping", ja.dynamics.damping, jb.dynamics.damping) ||
        !d.num(w + ".friction", ja.dynamics.friction, jb.dynamics.friction)) {
      return d.diff();
    }
  }
  return std::nullopt;
}

double total_mass(const RobotModel& m) {
  double sum = 0.0;
  for (const auto& l : m.links) {
    if (l.inertial) sum += l.inertial->mass;
  }
  return sum;
}

}  // namespace rdf_forge::model
