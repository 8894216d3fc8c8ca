#include "fixtures.hpp"
#include "oracles.hpp"

#include "rdf_forge/errors.hpp"
#include "rdf_forge/mesh.hpp"

#include <gtest/gtest.h>

using namespace rdf_forge;
using namespace rdf_forge::mesh;
using spatial::Vec3;

namespace {

TriMesh drop_last_triangle(TriMesh m) {
  m.triangles.pop_back();
  return m;
}

TriMesh flip(TriMesh m) {
  for (auto& t : m.triangles) std::swap(t[1], t[2]);
  return m;
}

}  // namespace

TEST(Soup, MergesSharedCornersAndDropsDegenerates) {
  std::vector<std::array<Vec3, 3>> soup{
      {Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0)},
      {Vec3(1, 0, 0), Vec3(1, 1, 0), Vec3(0, 1, 0)},
      {Vec3(0, 0, 0), Vec3(0, 0, 0), Vec3(1, 0, 0)},
      {Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(2, 0, 0)},
  };
  const TriMesh m = from_soup(soup);
  EXPECT_EQ(m.vertices.size(), 4u);
  EXPECT_EQ(m.triangles.size(), 2u);
  EXPECT_EQ(to_soup(m).size(), 2u);
}

TEST(Watertight, ClosedBoxPassesAndOpenBoxReportsEdges) {
  const TriMesh box = make_box({1, 2, 3});
  EXPECT_TRUE(is_watertight(box).watertight);
  const auto open = is_watertight(drop_last_triangle(box));
  EXPECT_FALSE(open.watertight);
  EXPECT_EQ(open.violations.size(), 3u);
  for (std::size_t i = 1; i < open.violations.size(); ++i) {
    const auto& p = open.violations[i - 1];
    const auto& q = open.violations[i];
    EXPECT_TRUE(std::tie(p.a, p.b) < std::tie(q.a, q.b));
  }
}

TEST(Watertight, InconsistentWindingIsAViolation) {
  TriMesh box = make_box({1, 1, 1});
  std::swap(box.triangles[0][1], box.triangles[0][2]);
  const auto r = is_watertight(box);
  EXPECT_FALSE(r.watertight);
  for (const auto& e : r.violations) EXPECT_TRUE(e.forward == 2 || e.backward == 2);
}

TEST(MassProps, UnitCube) {
  const auto p = mass_properties(make_box({1, 1, 1}), 1.0);
  EXPECT_NEAR(p.volume, 1.0, 1e-12);
  EXPECT_NEAR(p.mass, 1.0, 1e-12);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(p.com(i), 0.5, 1e-12);
  EXPECT_NEAR(p.inertia_com.ixx, 1.0 / 6.0, 1e-12);
  EXPECT_NEAR(p.inertia_com.iyy, 1.0 / 6.0, 1e-12);
  EXPECT_NEAR(p.inertia_com.izz, 1.0 / 6.0, 1e-12);
  EXPECT_NEAR(p.inertia_com.ixy, 0.0, 1e-12);
  EXPECT_NEAR(p.inertia_com.ixz, 0.0, 1e-12);
  EXPECT_NEAR(p.inertia_com.iyz, 0.0, 1e-12);
}

TEST(MassProps, OffsetCuboidWithDensity) {
  const double a = 0.4, b = 0.2, c = 0.1, rho = 2700;
  const auto p = mass_properties(make_box({a, b, c}, {3, -2, 5}), rho);
  const double m = rho * oracle::box_volume(a, b, c);
  EXPECT_NEAR(p.mass, m, 1e-12 * m);
  EXPECT_NEAR(p.com.x(), 3 + a / 2, 1e-12);
  EXPECT_NEAR(p.com.y(), -2 + b / 2, 1e-12);
  EXPECT_NEAR(p.com.z(), 5 + c / 2, 1e-12);
  EXPECT_NEAR(p.inertia_com.ixx, oracle::box_moment(m, b, c), 1e-12);
  EXPECT_NEAR(p.inertia_com.iyy, oracle::box_moment(m, a, c), 1e-12);
  EXPECT_NEAR(p.inertia_com.izz, oracle::box_moment(m, a, b), 1e-12);
}

TEST(MassProps, IcosphereAndCylinderApproachAnalyticValues) {
  const double r = 0.5;
  const auto s = mass_properties(make_icosphere(r, 3), 1.0);
  const double vs = oracle::sphere_volume(r);
  EXPECT_LT(std::abs(s.volume - vs) / vs, 0.01);
  EXPECT_LT(std::abs(s.inertia_com.ixx - oracle::sphere_moment(vs, r)) / oracle::sphere_moment(vs, r), 0.015);
  EXPECT_LT(s.com.norm(), 1e-12);

  const double rc = 0.25, h = 1.0;
  const auto c = mass_properties(make_cylinder(rc, h, 64), 1.0);
  const double vc = oracle::cylinder_volume(rc, h);
  EXPECT_LT(std::abs(c.volume - vc) / vc, 0.01);
  const double axial = oracle::cylinder_axial_moment(vc, rc);
  EXPECT_LT(std::abs(c.inertia_com.izz - axial) / axial, 0.015);
  const double transverse = oracle::cylinder_transverse_moment(vc, rc, h);
  EXPECT_LT(std::abs(c.inertia_com.ixx - transverse) / transverse, 0.015);
}

TEST(MassProps, Errors) {
  EXPECT_THROW(mass_properties(make_box({1, 1, 1}), 0.0), std::invalid_argument);
  EXPECT_THROW(mass_properties(drop_last_triangle(make_box({1, 1, 1})), 1.0), MeshError);
  try {
    mass_properties(flip(make_box({1, 1, 1})), 1.0);
    FAIL() << "inverted mesh accepted";
  } catch (const MeshError& e) {
    EXPECT_NE(std::string(e.what()).find("volume"), std::string::npos);
  }
}

TEST(MassProps, PrimitivesAreWatertight) {
  EXPECT_TRUE(is_watertight(make_centered_box({1, 2, 3})).watertight);
  EXPECT_TRUE(is_watertight(make_cylinder(0.1, 0.2, 8)).watertight);
  EXPECT_TRUE(is_watertight(make_icosphere(1, 2)).watertight);
  EXPECT_EQ(make_icosphere(1, 3).triangles.size(), 1280u);
}

TEST(Scale, PerAxisScalingScalesVolume) {
  const auto p = mass_properties(scale_mesh(make_box({1, 1, 1}), Vec3(2, 3, 4)), 1.0);
  EXPECT_NEAR(p.volume, 24.0, 1e-12);
  EXPECT_THROW(scale_mesh(make_box({1, 1, 1}), -1.0), std::invalid_argument);
  EXPECT_NEAR(mass_properties(scale_mesh(make_box({1, 1, 1}), 0.001), 1.0).volume, 1e-9, 1e-21);
}
