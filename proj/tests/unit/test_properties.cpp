#include "fixtures.hpp"
#include "oracles.hpp"

#include "rdf_forge/format_io.hpp"
#include "rdf_forge/mesh.hpp"
#include "rdf_forge/stl.hpp"
#include "rdf_forge/verify.hpp"

#include <gtest/gtest.h>

using namespace rdf_forge;
using fixtures::from_h;
using fixtures::to_h;
using model::JointType;
using model::RobotModel;
using spatial::InertiaTensor;
using spatial::Mat3;
using spatial::Transform;
using spatial::Vec3;

namespace {

constexpr int kCases = 250;

Vec3 vec(const std::array<double, 3>& a) { return {a[0], a[1], a[2]}; }

InertiaTensor random_inertia(oracle::Gen& g) {
  // principal moments from random non-negative "second moments" always
  // satisfy the triangle inequality
  const double a = g.uniform(0.01, 1), b = g.uniform(0.01, 1), c = g.uniform(0.01, 1);
  const Mat3 r = fixtures::rotation_of(g.rotation());
  return spatial::rotate_inertia(InertiaTensor::diagonal(b + c, a + c, a + b), r);
}

RobotModel random_chain(oracle::Gen& g) {
  RobotModel m;
  m.name = "rand";
  const int n = g.integer(2, 6);
  for (int i = 0; i < n; ++i) {
    model::Link l;
    l.name = "l" + std::to_string(i);
    l.inertial = model::Inertial{g.uniform(0.1, 5), Transform::translate(vec({g.uniform(-1, 1), g.uniform(-1, 1), 0.2})),
                                 random_inertia(g)};
    l.visuals.push_back({from_h(g.transform()), model::BoxGeometry{Vec3(0.1, g.uniform(0.1, 1), 0.3)}});
    l.collisions.push_back({from_h(g.transform()), model::MeshGeometry{"meshes/" + l.name + ".stl", Vec3::Ones()}});
    m.links.push_back(std::move(l));
  }
  const JointType kinds[] = {JointType::fixed, JointType::revolute, JointType::continuous, JointType::prismatic};
  for (int i = 1; i < n; ++i) {
    model::JointSpec j;
    j.name = "j" + std::to_string(i);
    j.type = kinds[g.integer(0, 3)];
    j.parent = "l" + std::to_string(g.integer(0, i - 1));
    j.child = "l" + std::to_string(i);
    j.origin = from_h(g.transform());
    if (model::has_axis(j.type)) j.axis = vec(g.unit_vector());
    if (j.type == JointType::revolute || j.type == JointType::prismatic) {
      const double lo = g.uniform(-2, 0);
      j.limits = model::Limits{lo, lo + g.uniform(0.1, 3), g.uniform(1, 50), g.uniform(0.5, 5)};
    }
    if (model::has_axis(j.type)) j.dynamics = {g.integer(0, 1) * g.uniform(0, 1), g.integer(0, 1) * g.uniform(0, 1)};
    m.joints.push_back(std::move(j));
  }
  return m;
}

verify::JointConfig random_config(oracle::Gen& g, const RobotModel& m) {
  verify::JointConfig q = verify::zero_config(m);
  for (auto& [name, v] : q) v = g.uniform(-1.5, 1.5);
  return q;
}

double rel_diff(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST(Property, TransformGroupLaws) {
  oracle::Gen g(101);
  for (int i = 0; i < kCases; ++i) {
    const auto a = g.transform(), b = g.transform(), c = g.transform();
    const Transform ta = from_h(a), tb = from_h(b), tc = from_h(c);
    EXPECT_LT(spatial::max_abs_diff(spatial::compose(spatial::compose(ta, tb), tc),
                                    spatial::compose(ta, spatial::compose(tb, tc))),
              1e-12);
    EXPECT_LT(spatial::max_abs_diff(spatial::compose(ta, spatial::inverse(ta)), Transform()), 1e-12);
    EXPECT_LT(fixtures::max_diff(to_h(spatial::compose(ta, tb)), oracle::mul(a, b)), 1e-12);
    EXPECT_LT(fixtures::max_diff(to_h(spatial::relative(ta, tb)), oracle::mul(oracle::invert(a), b)), 1e-12);
    EXPECT_TRUE(spatial::compose(ta, tb).is_valid());
  }
}

TEST(Property, RpyReproducesRotation) {
  oracle::Gen g(102);
  for (int i = 0; i < kCases; ++i) {
    Mat3 r = fixtures::rotation_of(g.rotation());
    if (i % 10 == 0) r = spatial::rpy_to_rot({g.uniform(-3, 3), (i % 20 == 0 ? 1 : -1) * oracle::kPi / 2, g.uniform(-3, 3)});
    const auto rpy = spatial::rot_to_rpy(r);
    EXPECT_LT((spatial::rpy_to_rot(rpy) - r).cwiseAbs().maxCoeff(), 1e-9) << i;
    EXPECT_LE(std::abs(rpy.pitch), oracle::kPi / 2 + 1e-12);
  }
}

TEST(Property, InertiaRotationKeepsPrincipalMoments) {
  oracle::Gen g(103);
  for (int i = 0; i < kCases; ++i) {
    const InertiaTensor in = random_inertia(g);
    const InertiaTensor out = spatial::rotate_inertia(in, fixtures::rotation_of(g.rotation()));
    EXPECT_LT((in.principal_moments() - out.principal_moments()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_NEAR(in.trace(), out.trace(), 1e-12);
    EXPECT_TRUE(out.is_physical());
  }
}

TEST(Property, ParallelAxisRoundTrip) {
  oracle::Gen g(104);
  for (int i = 0; i < kCases; ++i) {
    const InertiaTensor in = random_inertia(g);
    const double m = g.uniform(0.1, 10);
    const Vec3 d = vec({g.uniform(-2, 2), g.uniform(-2, 2), g.uniform(-2, 2)});
    const InertiaTensor shifted = spatial::parallel_axis(in, m, d);
    EXPECT_LT(spatial::max_abs_diff(spatial::parallel_axis_inverse(shifted, m, d), in), 1e-12);
    EXPECT_TRUE(shifted.is_physical());
    EXPECT_NEAR(shifted.trace(), in.trace() + 2 * m * d.squaredNorm(), 1e-11);
  }
}

TEST(Property, MassPropertiesFollowRigidMotion) {
  oracle::Gen g(105);
  const mesh::TriMesh shapes[] = {mesh::make_box({0.3, 0.5, 0.7}, {0.1, -0.2, 0.05}), mesh::make_icosphere(0.4, 1),
                                  mesh::make_cylinder(0.2, 0.6, 10)};
  for (int i = 0; i < kCases; ++i) {
    const auto& base = shapes[i % 3];
    const auto h = g.transform(3.0);
    std::vector<std::array<Vec3, 3>> soup;
    for (const auto& t : mesh::to_soup(base)) {
      std::array<Vec3, 3> moved;
      for (int k = 0; k < 3; ++k) moved[k] = vec(oracle::apply(h, t[k].x(), t[k].y(), t[k].z()));
      soup.push_back(moved);
    }
    const double rho = g.uniform(100, 8000);
    const auto p = mesh::mass_properties(base, rho);
    const auto q = mesh::mass_properties(mesh::from_soup(soup), rho);
    const Transform t = from_h(h);
    EXPECT_LT(rel_diff(q.mass, p.mass), 1e-9);
    EXPECT_LT((q.com - t.apply(p.com)).norm() / std::max(1.0, p.com.norm()), 1e-9);
    const InertiaTensor expected = spatial::rotate_inertia(p.inertia_com, t.rotation());
    EXPECT_LT(spatial::max_abs_diff(q.inertia_com, expected) / std::max(1e-12, p.inertia_com.trace()), 1e-9);
  }
}

TEST(Property, ForwardKinematicsFollowsRootPose) {
  oracle::Gen g(106);
  for (int i = 0; i < kCases; ++i) {
    const RobotModel m = random_chain(g);
    const auto q = random_config(g, m);
    const Transform root = from_h(g.transform());
    const auto at_origin = verify::fk(m, q);
    const auto moved = verify::fk(m, q, root);
    for (const auto& [name, pose] : at_origin) {
      EXPECT_LT(spatial::max_abs_diff(moved.at(name), spatial::compose(root, pose)), 1e-12) << name;
    }
  }
}

TEST(Property, FramingConversionsPreserveKinematics) {
  oracle::Gen g(107);
  for (int i = 0; i < kCases; ++i) {
    const RobotModel m = random_chain(g);
    const RobotModel f = model::to_model_frame(m);
    const auto diff = model::compare_models(model::to_chained(f), m, 1e-12);
    EXPECT_FALSE(diff) << *diff;
    const auto q = random_config(g, m);
    const auto a = verify::fk(m, q);
    const auto b = verify::fk(f, q);
    for (const auto& [name, pose] : a) EXPECT_LT(spatial::max_abs_diff(pose, b.at(name)), 1e-12) << name;
  }
}

TEST(Property, UrdfRoundTrip) {
  oracle::Gen g(108);
  for (int i = 0; i < kCases; ++i) {
    const RobotModel m = random_chain(g);
    const std::string text = format::emit_urdf(m);
    const RobotModel back = format::parse_urdf(text);
    const auto diff = model::compare_models(back, m, 1e-12);
    ASSERT_FALSE(diff) << *diff;
  }
}

TEST(Property, SdfRoundTrip) {
  oracle::Gen g(109);
  for (int i = 0; i < kCases; ++i) {
    const RobotModel m = convert::urdf_to_sdf(random_chain(g));
    const std::string text = format::emit_sdf(m);
    const RobotModel back = format::parse_sdf(text);
    const auto diff = model::compare_models(back, m, 1e-12);
    ASSERT_FALSE(diff) << *diff;
  }
}

TEST(Property, UrdfSdfConversionRoundTrip) {
  oracle::Gen g(110);
  for (int i = 0; i < kCases; ++i) {
    const RobotModel m = random_chain(g);
    const auto diff = model::compare_models(convert::sdf_to_urdf(convert::urdf_to_sdf(m)), m, 1e-12);
    ASSERT_FALSE(diff) << *diff;
  }
}

TEST(Property, BinaryStlRoundTripIsExact) {
  oracle::Gen g(111);
  for (int i = 0; i < kCases; ++i) {
    std::vector<std::array<float, 9>> tris(static_cast<std::size_t>(g.integer(1, 20)));
    for (auto& t : tris) {
      for (auto& v : t) v = static_cast<float>(g.uniform(-100, 100));
    }
    const std::string bytes = oracle::binary_stl(tris);
    const auto m = mesh::parse_stl(bytes);
    const auto soup = mesh::to_soup(m);
    ASSERT_EQ(soup.size(), tris.size());
    for (std::size_t k = 0; k < tris.size(); ++k) {
      for (int c = 0; c < 9; ++c) EXPECT_EQ(soup[k][c / 3](c % 3), static_cast<double>(tris[k][c]));
    }
    const auto again = mesh::to_soup(mesh::parse_stl(mesh::write_stl(m, mesh::StlMode::binary)));
    EXPECT_EQ(again, soup);
  }
}
