#include "rdf_forge/verify.hpp"

#include "rdf_forge/errors.hpp"
#include "rdf_forge/number_format.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace rdf_forge::verify {

using model::JointType;

JointConfig zero_config(const model::RobotModel& m) {
  JointConfig q;
  for (const auto& j : m.joints) {
    if (model::is_single_dof(j.type)) q[j.name] = 0.0;
  }
  return q;
}

const TreeJoint* KinematicTree::find(const std::string& name) const {
  for (const auto& j : joints) {
    if (j.name == name) return &j;
  }
  return nullptr;
}

KinematicTree build_tree(const model::RobotModel& m) {
  KinematicTree t;
  const auto g = model::topology(m);
  t.links = g.nodes;
  t.spanning = g.spanning_edges;
  t.loop_joints = g.loop_edges;

  const bool chained = m.framing == model::Framing::chained;
  auto pose_of = [&](const std::string& link) {
    if (chained) return Transform::identity();
    const auto* l = m.find_link(link);
    return l ? l->pose_in_model : Transform::identity();
  };

  for (const auto& j : m.joints) {
    TreeJoint tj;
    tj.name = j.name;
    tj.type = j.type;
    tj.parent = j.parent;
    tj.child = j.child;
    if (j.axis && j.axis->norm() > 0.0) tj.axis = j.axis->normalized();
    tj.limits = j.limits;
    if (chained) {
      tj.parent_to_joint = j.origin;
    } else {
      const Transform joint_in_model = spatial::compose(pose_of(j.child), j.origin);
      tj.parent_to_joint = spatial::relative(pose_of(j.parent), joint_in_model);
      tj.joint_to_child = spatial::inverse(j.origin);
    }
    t.joints.push_back(std::move(tj));
  }

  std::set<std::string> reached;
  for (const auto& e : g.spanning_edges) reached.insert(e.child);
  for (const auto& n : g.nodes) {
    if (reached.count(n)) continue;
    t.roots.push_back(n);
    t.root_offsets[n] = pose_of(n);
  }
  // The graph root comes first so root_pose applies to it.
  const auto it = std::find(t.roots.begin(), t.roots.end(), g.root);
  if (it != t.roots.end()) std::rotate(t.roots.begin(), it, it + 1);
  return t;
}

Transform joint_motion(const TreeJoint& j, double q) {
  switch (j.type) {
    case JointType::revolute:
    case JointType::continuous: return Transform::rotate(spatial::axis_angle(j.axis, q));
    case JointType::prismatic: return Transform::translate(q * j.axis);
    default: return Transform::identity();
  }
}

namespace {

double joint_value(const TreeJoint& j, const JointConfig& q, std::vector<std::string>* warnings) {
  if (!model::is_single_dof(j.type)) return 0.0;
  const auto it = q.find(j.name);
  if (it == q.end()) throw DomainError("no value given for joint '" + j.name + "'");
  const double v = it->second;
  if (warnings && j.limits && j.type != JointType::continuous && (v < j.limits->lower || v > j.limits->upper)) {
    warnings->push_back("joint '" + j.name + "' value " + format_number(v) + " is outside [" +
                        format_number(j.limits->lower) + ", " + format_number(j.limits->upper) + "]");
  }
  return v;
}

void check_config(const KinematicTree& tree, const JointConfig& q) {
  for (const auto& [name, value] : q) {
    const auto* j = tree.find(name);
    if (!j) throw DomainError("configuration names unknown joint '" + name + "'");
    if (!model::is_single_dof(j->type)) {
      throw DomainError(std::string(model::to_string(j->type)) + " joint '" + name + "' takes no value");
    }
  }
}

}  // namespace

std::map<std::string, Transform> fk(const KinematicTree& tree, const JointConfig& q, const Transform& root_pose,
                                    std::vector<std::string>* warnings) {
  check_config(tree, q);
  std::map<std::string, Transform> pose;
  for (const auto& r : tree.roots) pose[r] = spatial::compose(root_pose, tree.root_offsets.at(r));
  for (const auto& e : tree.spanning) {
    const auto& j = *tree.find(e.id);
    const Transform m = joint_motion(j, joint_value(j, q, warnings));
    const Transform parent_to_child = spatial::compose(spatial::compose(j.parent_to_joint, m), j.joint_to_child);
    pose[e.child] = spatial::compose(pose.at(e.parent), e.reversed ? spatial::inverse(parent_to_child) : parent_to_child);
  }
  return pose;
}

std::map<std::string, Transform> fk(const model::RobotModel& m, const JointConfig& q, const Transform& root_pose,
                                    std::vector<std::string>* warnings) {
  return fk(build_tree(m), q, root_pose, warnings);
}

namespace {

double swing_angle(const spatial::Mat3& r, const Vec3& axis) {
  const Vec3 moved = r * axis;
  return std::atan2(axis.cross(moved).norm(), axis.dot(moved));
}

}  // namespace

std::vector<LoopResidual> loop_residual(const KinematicTree& tree, const JointConfig& q) {
  std::vector<LoopResidual> out;
  if (tree.loop_joints.empty()) return out;
  const auto pose = fk(tree, q);
  for (const auto& name : tree.loop_joints) {
    const auto& j = *tree.find(name);
    const Transform via_parent = spatial::compose(pose.at(j.parent), j.parent_to_joint);
    const Transform via_child = spatial::compose(pose.at(j.child), spatial::inverse(j.joint_to_child));
    const Transform d = spatial::relative(via_parent, via_child);
    const Vec3& t = d.translation();
    LoopResidual r{name, t.norm(), spatial::rotation_angle(d.rotation())};
    switch (j.type) {
      case JointType::revolute:
      case JointType::continuous: r.angle = swing_angle(d.rotation(), j.axis); break;
      case JointType::prismatic: r.position = (t - t.dot(j.axis) * j.axis).norm(); break;
      case JointType::ball: r.angle = 0.0; break;
      case JointType::planar:
        r.position = std::abs(t.dot(j.axis));
        r.angle = swing_angle(d.rotation(), j.axis);
        break;
      case JointType::fixed: break;
    }
    out.push_back(r);
  }
  return out;
}

std::vector<LoopResidual> loop_residual(const model::RobotModel& m, const JointConfig& q) {
  return loop_residual(build_tree(m), q);
}

std::string_view to_string(Severity s) {
  switch (s) {
    case Severity::error: return "error";
    case Severity::warning: return "warning";
    case Severity::info: return "info";
  }
  return "error";
}

std::size_t ValidationReport::count(Severity s) const {
  return static_cast<std::size_t>(
      std::count_if(findings.begin(), findings.end(), [s](const Finding& f) { return f.severity == s; }));
}

namespace {

class Rules {
 public:
  Rules(const model::RobotModel& m, const ValidateOptions& opts) : m_(m), opts_(opts) {}

  ValidationReport run() {
    names();
    const bool refs_ok = references();
    if (refs_ok) masses();
    inertias();
    limits();
    axes();
    if (refs_ok) representability();
    meshes();
    required_limits();
    std::stable_sort(report_.findings.begin(), report_.findings.end(), [](const Finding& a, const Finding& b) {
      return std::tie(a.rule, a.subject) < std::tie(b.rule, b.subject);
    });
    return std::move(report_);
  }

 private:
  void add(Severity s, const char* rule, const std::string& subject, std::string message) {
    report_.findings.push_back({s, rule, subject, std::move(message)});
  }

  void names() {
    std::set<std::string> seen;
    for (const auto& l : m_.links) {
      if (!seen.insert(l.name).second) add(Severity::error, "R1", l.name, "duplicate link name");
    }
    seen.clear();
    for (const auto& j : m_.joints) {
      if (!seen.insert(j.name).second) add(Severity::error, "R1", j.name, "duplicate joint name");
    }
  }

  bool references() {
    bool ok = true;
    for (const auto& j : m_.joints) {
      for (const auto* ref : {&j.parent, &j.child}) {
        if (!m_.find_link(*ref) && *ref != model::kWorldLink) {
          add(Severity::error, "R1", j.name, "references unknown link '" + *ref + "'");
          ok = false;
        }
      }
      if (j.parent == j.child) {
        add(Severity::error, "R1", j.name, "connects link '" + j.parent + "' to itself");
        ok = false;
      }
    }
    return ok;
  }

  void masses() {
    const auto tree = build_tree(m_);
    std::set<std::string> movable;
    for (const auto& e : tree.spanning) {
      if (movable.count(e.parent) || tree.find(e.id)->type != JointType::fixed) movable.insert(e.child);
    }
    for (const auto& l : m_.links) {
      if (l.inertial && l.inertial->mass < 0.0) {
        add(Severity::error, "R2", l.name, "negative mass " + format_number(l.inertial->mass));
      } else if (movable.count(l.name)) {
        if (!l.inertial) {
          add(Severity::error, "R2", l.name, "movable link has no inertial");
        } else if (l.inertial->mass <= 0.0) {
          add(Severity::error, "R2", l.name, "movable link has zero mass");
        }
      }
    }
  }

  void inertias() {
    for (const auto& l : m_.links) {
      if (!l.inertial) continue;
      const auto& in = l.inertial->inertia;
      const Vec3 p = in.principal_moments();
      const std::string moments =
          " (principal moments " + format_numbers({p.x(), p.y(), p.z()}) + ")";
      if (!in.positive_semidefinite()) {
        add(Severity::error, "R3", l.name, "inertia is not positive semidefinite" + moments);
      } else if (!in.satisfies_triangle_inequality()) {
        add(Severity::error, "R3", l.name, "inertia violates the triangle inequality" + moments);
      }
    }
  }

  void limits() {
    for (const auto& j : m_.joints) {
      if (j.limits && j.limits->lower > j.limits->upper) {
        add(Severity::error, "R4", j.name,
            "lower limit " + format_number(j.limits->lower) + " exceeds upper limit " + format_number(j.limits->upper));
      }
    }
  }

  void axes() {
    for (const auto& j : m_.joints) {
      if (!model::has_axis(j.type)) continue;
      if (!j.axis) {
        add(Severity::error, "R5", j.name, "missing axis");
      } else if (std::abs(j.axis->norm() - 1.0) > spatial::kUnitNormTol) {
        add(Severity::error, "R5", j.name, "axis norm is " + format_number(j.axis->norm()) + ", expected 1");
      }
    }
  }

  void representability() {
    const auto g = model::topology(m_);
    for (const auto& id : g.loop_edges) {
      add(Severity::info, "R6", id, "not URDF-representable: joint closes a kinematic loop");
    }
    for (const auto& j : m_.joints) {
      if (j.type == JointType::ball) add(Severity::info, "R6", j.name, "not URDF-representable: ball joint");
    }
  }

  std::optional<std::filesystem::path> resolve(const std::string& filename) const {
    std::string rest = filename;
    if (rest.rfind("model://", 0) == 0) {
      rest = rest.substr(8);
      const auto slash = rest.find('/');
      if (slash == std::string::npos) return std::nullopt;
      rest = rest.substr(slash + 1);
    } else if (rest.rfind("file://", 0) == 0) {
      rest = rest.substr(7);
    } else if (rest.find("://") != std::string::npos) {
      return std::nullopt;
    }
    const std::filesystem::path p(rest);
    return p.is_absolute() ? p : *opts_.base_dir / p;
  }

  void meshes() {
    if (!opts_.base_dir) return;
    for (const auto& l : m_.links) {
      for (const auto* list : {&l.visuals, &l.collisions}) {
        for (const auto& e : *list) {
          const auto* mesh = std::get_if<model::MeshGeometry>(&e.geometry);
          if (!mesh) continue;
          const auto path = resolve(mesh->filename);
          if (!path) {
            add(Severity::warning, "R7", l.name, "cannot resolve mesh URI '" + mesh->filename + "'");
          } else if (!std::filesystem::is_regular_file(*path)) {
            add(Severity::error, "R7", l.name, "mesh file not found: " + path->string());
          }
        }
      }
    }
  }

  void required_limits() {
    if (m_.framing != model::Framing::chained) return;
    for (const auto& j : m_.joints) {
      if ((j.type == JointType::revolute || j.type == JointType::prismatic) && !j.limits) {
        add(Severity::error, "R8", j.name, std::string(model::to_string(j.type)) + " joint has no limits");
      }
    }
  }

  const model::RobotModel& m_;
  const ValidateOptions& opts_;
  ValidationReport report_;
};

}  // namespace

ValidationReport validate(const model::RobotModel& m, const ValidateOptions& opts) { return Rules(m, opts).run(); }

std::string render_text(const ValidationReport& r) {
  std::string out;
  for (const auto& f : r.findings) {
    out += std::string(to_string(f.severity)) + " " + f.rule + " " + f.subject + ": " + f.message + "\n";
  }
  out += std::to_string(r.count(Severity::error)) + " error(s), " + std::to_string(r.count(Severity::warning)) +
         " warning(s), " + std::to_string(r.count(Severity::info)) + " info\n";
  return out;
}

std::string render_machine(const ValidationReport& r) {
  std::string out;
  for (const auto& f : r.findings) {
    out += std::string(to_string(f.severity)) + "\t" + f.rule + "\t" + f.subject + "\t" + f.message + "\n";
  }
  return out;
}

}  // namespace rdf_forge::verify
