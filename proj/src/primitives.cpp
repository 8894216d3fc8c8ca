#include "rdf_forge/mesh.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace rdf_forge::mesh {

TriMesh make_box(const Vec3& size, const Vec3& min) {
  if (!(size.minCoeff() > 0.0)) throw std::invalid_argument("make_box: size must be positive");
  TriMesh m;
  for (int i = 0; i < 8; ++i) {
    m.vertices.push_back(min + Vec3((i & 1) ? size.x() : 0.0, (i & 2) ? size.y() : 0.0,
                                    (i & 4) ? size.z() : 0.0));
  }
  // vertex index bits: x=1, y=2, z=4
  m.triangles = {
      {0, 2, 3}, {0, 3, 1},  // -z
      {4, 5, 7}, {4, 7, 6},  // +z
      {0, 1, 5}, {0, 5, 4},  // -y
      {2, 6, 7}, {2, 7, 3},  // +y
      {0, 4, 6}, {0, 6, 2},  // -x
      {1, 3, 7}, {1, 7, 5},  // +x
  };
  return m;
}

TriMesh make_centered_box(const Vec3& size) { return make_box(size, -0.5 * size); }

TriMesh make_cylinder(double radius, double height, int segments) {
  if (!(radius > 0.0) || !(height > 0.0) || segments < 3) {
    throw std::invalid_argument("make_cylinder: bad dimensions");
  }
  TriMesh m;
  const double z0 = -0.5 * height, z1 = 0.5 * height;
  const auto n = static_cast<std::uint32_t>(segments);
  for (std::uint32_t i = 0; i < n; ++i) {
    const double a = 2.0 * M_PI * i / segments;
    const double x = radius * std::cos(a), y = radius * std::sin(a);
    m.vertices.emplace_back(x, y, z0);
    m.vertices.emplace_back(x, y, z1);
  }
  const std::uint32_t bottom = 2 * n, top = 2 * n + 1;
  m.vertices.emplace_back(0, 0, z0);
  m.vertices.emplace_back(0, 0, z1);
  for (std::uint32_t i = 0; i < n; ++i) {
    const std::uint32_t j = (i + 1) % n;
    const std::uint32_t b0 = 2 * i, t0 = 2 * i + 1, b1 = 2 * j, t1 = 2 * j + 1;
    m.triangles.push_back({b0, b1, t1});
    m.triangles.push_back({b0, t1, t0});
    m.triangles.push_back({bottom, b1, b0});
    m.triangles.push_back({top, t0, t1});
  }
  return m;
}

TriMesh make_icosphere(double radius, int subdivisions) {
  if (!(radius > 0.0) || subdivisions < 0) throw std::invalid_argument("make_icosphere: bad dimensions");
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Vec3> unit = {
      {-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0},
      {0, -1, t}, {0, 1, t}, {0, -1, -t}, {0, 1, -t},
      {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1},
  };
  for (auto& v : unit) v.normalize();
  std::vector<Triangle> faces = {
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
      {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
      {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
      {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1},
  };
  for (int level = 0; level < subdivisions; ++level) {
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> midpoints;
    auto midpoint = [&](std::uint32_t a, std::uint32_t b) {
      const auto key = std::make_pair(std::min(a, b), std::max(a, b));
      auto it = midpoints.find(key);
      if (it != midpoints.end()) return it->second;
      unit.push_back((unit[a] + unit[b]).normalized());
      const auto idx = static_cast<std::uint32_t>(unit.size() - 1);
      midpoints.emplace(key, idx);
      return idx;
    };
    std::vector<Triangle> refined;
    refined.reserve(faces.size() * 4);
    for (const auto& f : faces) {
      const std::uint32_t ab = midpoint(f[0], f[1]), bc = midpoint(f[1], f[2]), ca = midpoint(f[2], f[0]);
      refined.push_back({f[0], ab, ca});
      refined.push_back({f[1], bc, ab});
      refined.push_back({f[2], ca, bc});
      refined.push_back({ab, bc, ca});
    }
    faces = std::move(refined);
  }
  TriMesh m;
  m.vertices.reserve(unit.size());
  for (const auto& v : unit) m.vertices.push_back(radius * v);
  m.triangles = std::move(faces);
  return m;
}

}  // namespace rdf_forge::mesh
