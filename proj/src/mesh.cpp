#include "rdf_forge/mesh.hpp"

#include "rdf_forge/errors.hpp"
#include "rdf_forge/number_format.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace rdf_forge::mesh {

namespace {

struct CoordLess {
  bool operator()(const Vec3& a, const Vec3& b) const {
    if (a.x() != b.x()) return a.x() < b.x();
    if (a.y() != b.y()) return a.y() < b.y();
    return a.z() < b.z();
  }
};

}  // namespace

TriMesh from_soup(const std::vector<std::array<Vec3, 3>>& soup) {
  TriMesh mesh;
  std::map<Vec3, std::uint32_t, CoordLess> index;
  auto intern = [&](const Vec3& p) {
    auto [it, inserted] = index.try_emplace(p, static_cast<std::uint32_t>(mesh.vertices.size()));
    if (inserted) mesh.vertices.push_back(p);
    return it->second;
  };
  mesh.triangles.reserve(soup.size());
  for (const auto& tri : soup) {
    const Vec3 n = (tri[1] - tri[0]).cross(tri[2] - tri[0]);
    if (n.squaredNorm() == 0.0) continue;
    const Triangle t{intern(tri[0]), intern(tri[1]), intern(tri[2])};
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2]) continue;
    mesh.triangles.push_back(t);
  }
  return mesh;
}

std::vector<std::array<Vec3, 3>> to_soup(const TriMesh& mesh) {
  std::vector<std::array<Vec3, 3>> soup;
  soup.reserve(mesh.triangles.size());
  for (const auto& t : mesh.triangles) {
    soup.push_back({mesh.vertices[t[0]], mesh.vertices[t[1]], mesh.vertices[t[2]]});
  }
  return soup;
}

WatertightReport is_watertight(const TriMesh& mesh) {
  // key: (min, max) vertex pair; value: (count min→max, count max→min)
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::pair<int, int>> edges;
  for (const auto& t : mesh.triangles) {
    for (int k = 0; k < 3; ++k) {
      const std::uint32_t u = t[k], v = t[(k + 1) % 3];
      auto& counts = edges[{std::min(u, v), std::max(u, v)}];
      (u < v ? counts.first : counts.second) += 1;
    }
  }
  WatertightReport report;
  for (const auto& [key, counts] : edges) {
    if (counts.first == 1 && counts.second == 1) continue;
    report.violations.push_back({key.first, key.second, counts.first, counts.second});
  }
  report.watertight = report.violations.empty();
  return report;
}

MassProperties mass_properties(const TriMesh& mesh, double density) {
  if (!(density > 0.0)) throw std::invalid_argument("mass_properties: density must be positive");

  const WatertightReport wt = is_watertight(mesh);
  if (!wt.watertight) {
    std::ostringstream msg;
    msg << "mesh is not watertight: " << wt.violations.size() << " open edge(s)";
    const std::size_t shown = std::min<std::size_t>(wt.violations.size(), 8);
    for (std::size_t i = 0; i < shown; ++i) {
      const auto& e = wt.violations[i];
      msg << (i ? ", " : " [") << e.a << '-' << e.b;
    }
    if (shown) msg << (shown < wt.violations.size() ? ", ...]" : "]");
    throw MeshError(msg.str());
  }

  // Integrate about the vertex centroid instead of the origin; large offsets
  // would otherwise cancel catastrophically in the second moments.
  Vec3 ref = Vec3::Zero();
  for (const auto& v : mesh.vertices) ref += v;
  if (!mesh.vertices.empty()) ref /= static_cast<double>(mesh.vertices.size());

  double six_volume = 0.0;
  Vec3 first = Vec3::Zero();       // Σ det·(a+b+c), scaled by 1/24 at the end
  spatial::Mat3 second = spatial::Mat3::Zero();  // Σ det·(S + s·sᵀ), scaled by 1/120
  for (const auto& t : mesh.triangles) {
    const Vec3 a = mesh.vertices[t[0]] - ref;
    const Vec3 b = mesh.vertices[t[1]] - ref;
    const Vec3 c = mesh.vertices[t[2]] - ref;
    const double det = a.dot(b.cross(c));
    const Vec3 s = a + b + c;
    six_volume += det;
    first += det * s;
    second += det * (a * a.transpose() + b * b.transpose() + c * c.transpose() + s * s.transpose());
  }
  const double volume = six_volume / 6.0;
  if (!(volume > 0.0)) {
    throw MeshError("mesh encloses non-positive volume " + format_number(volume) +
                    " (triangles wound inward or empty mesh)");
  }
  first /= 24.0;
  second /= 120.0;

  MassProperties props;
  props.volume = volume;
  props.mass = density * volume;
  const Vec3 com_rel = first / volume;
  props.com = com_rel + ref;

  const spatial::Mat3 inertia_ref = density * (second.trace() * spatial::Mat3::Identity() - second);
  props.inertia_com = spatial::parallel_axis_inverse(InertiaTensor::from_matrix(inertia_ref),
                                                     props.mass, com_rel);
  return props;
}

TriMesh scale_mesh(const TriMesh& mesh, double factor) {
  if (!(factor > 0.0)) throw std::invalid_argument("scale_mesh: factor must be positive");
  return scale_mesh(mesh, Vec3::Constant(factor));
}

TriMesh scale_mesh(const TriMesh& mesh, const Vec3& factors) {
  if (!(factors.minCoeff() > 0.0)) throw std::invalid_argument("scale_mesh: factors must be positive");
  TriMesh out = mesh;
  for (auto& v : out.vertices) v = v.cwiseProduct(factors);
  return out;
}

TriMesh transform_mesh(const TriMesh& mesh, const spatial::Transform& t) {
  TriMesh out = mesh;
  for (auto& v : out.vertices) v = t.apply(v);
  return out;
}

}  // namespace rdf_forge::mesh
