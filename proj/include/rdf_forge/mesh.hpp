#pragma once

#include "rdf_forge/spatial.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace rdf_forge::mesh {

using spatial::InertiaTensor;
using spatial::Vec3;

using Triangle = std::array<std::uint32_t, 3>;

/// Indexed triangle mesh. Triangles are wound counter-clockwise when seen
/// from outside the solid.
struct TriMesh {
  std::vector<Vec3> vertices;
  std::vector<Triangle> triangles;

  bool empty() const { return triangles.empty(); }
};

/// Builds an indexed mesh from a triangle soup (three corners per entry).
/// Corners are merged by exact coordinate equality; triangles whose corners
/// coincide or whose area is exactly zero are dropped.
TriMesh from_soup(const std::vector<std::array<Vec3, 3>>& soup);
std::vector<std::array<Vec3, 3>> to_soup(const TriMesh& mesh);

struct OpenEdge {
  std::uint32_t a = 0;  ///< a < b
  std::uint32_t b = 0;
  int forward = 0;      ///< occurrences of a→b as a directed triangle edge
  int backward = 0;     ///< occurrences of b→a
};

struct WatertightReport {
  bool watertight = true;
  std::vector<OpenEdge> violations;  ///< sorted by (a, b)
};

/// Every undirected edge must appear exactly once in each direction.
WatertightReport is_watertight(const TriMesh& mesh);

struct MassProperties {
  double volume = 0.0;  ///< m³
  double mass = 0.0;    ///< kg
  Vec3 com = Vec3::Zero();
  InertiaTensor inertia_com;  ///< about com, axes parallel to the mesh frame
};

/// Volume, center of mass and inertia of the solid bounded by `mesh`, by
/// summing signed tetrahedra that share a common apex. Throws MeshError for
/// open meshes (listing the open edges) and for non-positive volume
/// (inward-facing winding is reported, never flipped).
MassProperties mass_properties(const TriMesh& mesh, double density);

TriMesh scale_mesh(const TriMesh& mesh, double factor);
/// Per-axis scaling; every component must be positive.
TriMesh scale_mesh(const TriMesh& mesh, const Vec3& factors);
TriMesh transform_mesh(const TriMesh& mesh, const spatial::Transform& t);

// Primitive solids, outward wound.

/// Axis-aligned box spanning [min, min + size].
TriMesh make_box(const Vec3& size, const Vec3& min = Vec3::Zero());
/// Box centered on the origin.
TriMesh make_centered_box(const Vec3& size);
/// Cylinder along +z centered on the origin, `segments` facets around.
TriMesh make_cylinder(double radius, double height, int segments);
/// Geodesic sphere centered on the origin: an icosahedron refined
/// `subdivisions` times, vertices projected onto the sphere.
TriMesh make_icosphere(double radius, int subdivisions);

}  // namespace rdf_forge::mesh
