#include "fixtures.hpp"
#include "oracles.hpp"

#include "rdf_forge/errors.hpp"
#include "rdf_forge/format_io.hpp"

#include <gtest/gtest.h>

using namespace rdf_forge;
using namespace rdf_forge::format;
using namespace rdf_forge::model;
using convert::Format;

namespace {

std::string urdf_with(const std::string& joints, const std::string& links = R"(<link name="a"/><link name="b"/>)") {
  return "<?xml version=\"1.0\"?>\n<robot name=\"r\">\n" + links + joints + "\n</robot>\n";
}

const char* kHinge = R"(<joint name="j" type="revolute"><parent link="a"/><child link="b"/>
  <limit lower="-1" upper="1" effort="10" velocity="2"/></joint>)";

RobotModel hinge_model() { return parse_urdf(urdf_with(kHinge)); }

std::string parse_error(const std::string& text, bool sdf = false) {
  try {
    sdf ? parse_sdf(text) : parse_urdf(text);
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

std::string sdf_with(const std::string& body, const std::string& version = "1.7") {
  return "<sdf version=\"" + version + "\"><model name=\"m\">" + body + "</model></sdf>";
}

}  // namespace

TEST(Urdf, LimitElementIsWrittenExactly) {
  const std::string out = emit_urdf(hinge_model());
  EXPECT_NE(out.find(R"(<limit lower="-1" upper="1" effort="10" velocity="2"/>)"), std::string::npos) << out;
}

TEST(Urdf, MissingAxisDefaultsToX) {
  const RobotModel m = hinge_model();
  ASSERT_EQ(m.joints.size(), 1u);
  EXPECT_EQ(*m.joints[0].axis, Vec3::UnitX());
  EXPECT_LT(spatial::max_abs_diff(m.joints[0].origin, Transform()), 0.0 + 1e-300);
}

TEST(Urdf, OriginIsTranslationThenRpy) {
  const RobotModel m = parse_urdf(urdf_with(R"(<joint name="j" type="fixed"><parent link="a"/><child link="b"/>
    <origin xyz="1 2 3" rpy="0.1 0.2 0.3"/></joint>)"));
  EXPECT_LT(fixtures::max_diff(fixtures::to_h(m.joints[0].origin), oracle::pose(1, 2, 3, 0.1, 0.2, 0.3)), 1e-15);
}

TEST(Urdf, ReferenceErrors) {
  EXPECT_NE(parse_error(urdf_with("", R"(<link name="a"/><link name="a"/>)")).find("duplicate"), std::string::npos);
  const std::string dangling = parse_error(urdf_with(R"(<joint name="j" type="fixed"><parent link="a"/><child link="zz"/></joint>)"));
  EXPECT_NE(dangling.find("unknown link 'zz'"), std::string::npos) << dangling;
  const std::string no_limit = parse_error(urdf_with(R"(<joint name="j" type="revolute"><parent link="a"/><child link="b"/></joint>)"));
  EXPECT_NE(no_limit.find("requires <limit>"), std::string::npos) << no_limit;
  EXPECT_NE(parse_error(urdf_with(R"(<joint name="j" type="ball"><parent link="a"/><child link="b"/></joint>)"))
                .find("unsupported URDF joint type"),
            std::string::npos);
  EXPECT_NE(parse_error("<sdf/>").find("<robot>"), std::string::npos);
}

TEST(Urdf, SyntaxErrorsCarryLineNumbers) {
  try {
    parse_urdf("<robot name=\"r\">\n<link name=\"a\">\n</robot>\n");
    FAIL() << "malformed XML accepted";
  } catch (const ParseError& e) {
    EXPECT_NE(e.location().find("line 3"), std::string::npos) << e.what();
  }
}

TEST(Urdf, UnknownElementsBecomeWarnings) {
  Warnings w;
  parse_urdf(urdf_with(R"(<gazebo reference="a"/><transmission name="t"/>)"), &w);
  EXPECT_EQ(w.size(), 2u);
}

TEST(Urdf, EmitRejectsWhatUrdfCannotHold) {
  RobotModel m = hinge_model();
  m.joints[0].limits.reset();
  EXPECT_THROW(emit_urdf(m), DomainError);
  m = hinge_model();
  m.joints[0].type = JointType::ball;
  EXPECT_THROW(emit_urdf(m), UnsupportedJointError);
}

TEST(Urdf, ClosedLoopNamesTheClosingJoint) {
  RobotModel m = parse_urdf(urdf_with(kHinge, R"(<link name="a"/><link name="b"/><link name="c"/>)"));
  JointSpec j1 = m.joints[0];
  j1.name = "to_c";
  j1.child = "c";
  JointSpec j2 = m.joints[0];
  j2.name = "close";
  j2.parent = "b";
  j2.child = "c";
  m.joints.push_back(j1);
  m.joints.push_back(j2);
  try {
    emit_urdf(m);
    FAIL() << "loop accepted";
  } catch (const ClosedLoopError& e) {
    EXPECT_EQ(e.loop_joints(), std::vector<std::string>{"close"});
    EXPECT_NE(std::string(e.what()).find("close"), std::string::npos);
  }
}

TEST(Urdf, StampAndDeterminism) {
  const RobotModel m = hinge_model();
  EXPECT_EQ(emit_urdf(m), emit_urdf(m));
  EXPECT_EQ(emit_urdf(m).find("<!--"), std::string::npos);
  EmitOptions o;
  o.stamp = "generated 2026";
  EXPECT_NE(emit_urdf(m, o).find("<!-- generated 2026 -->"), std::string::npos);
}

TEST(Urdf, NegativeZeroIsNormalized) {
  RobotModel m = hinge_model();
  m.joints[0].origin = Transform::translate(-0.0, 0, 0);
  EXPECT_EQ(emit_urdf(m).find("-0 "), std::string::npos);
}

TEST(Sdf, WorldParentAndDefaults) {
  const RobotModel m = parse_sdf(sdf_with(R"(<link name="a"/><joint name="anchor" type="fixed"><parent>world</parent><child>a</child></joint>
    <joint name="spin" type="revolute"><parent>a</parent><child>b</child></joint><link name="b"><pose>0 0 1 0 0 0</pose></link>)"));
  EXPECT_EQ(m.framing, Framing::model_frame);
  EXPECT_EQ(m.joints[0].parent, "world");
  EXPECT_EQ(*m.joints[1].axis, Vec3::UnitZ());
  EXPECT_FALSE(m.joints[1].limits);
  EXPECT_EQ(m.find_link("b")->pose_in_model.translation().z(), 1.0);
  EXPECT_LT(spatial::max_abs_diff(m.find_link("a")->pose_in_model, Transform()), 1e-300);
  EXPECT_EQ(topology(m).root, "world");
}

TEST(Sdf, UnsupportedInputsAreRejected) {
  EXPECT_NE(parse_error(sdf_with(R"(<link name="a"/>)", "1.3"), true).find("1.3"), std::string::npos);
  EXPECT_NE(parse_error(sdf_with(R"(<link name="a"><pose relative_to="x">0 0 0 0 0 0</pose></link>)"), true)
                .find("relative_to"),
            std::string::npos);
  EXPECT_NE(parse_error(sdf_with(R"(<link name="a"/><joint name="j" type="screw"><parent>a</parent><child>a</child></joint>)"), true)
                .find("screw"),
            std::string::npos);
  EXPECT_NE(parse_error(sdf_with(R"(<link name="a"/><joint name="j" type="fixed"><parent>a</parent><child>q</child></joint>)"), true)
                .find("unknown link 'q'"),
            std::string::npos);
  EXPECT_NE(parse_error("<sdf version=\"1.7\"/>", true).find("no <model>"), std::string::npos);
}

TEST(Sdf, EmitRejectsPlanar) {
  RobotModel m = to_model_frame(hinge_model());
  m.joints[0].type = JointType::planar;
  EXPECT_THROW(emit_sdf(m), UnsupportedJointError);
}

TEST(Sdf, ModelUriMeshPaths) {
  const RobotModel m = fixtures::convert_library("two_link_arm", Format::sdf).conversion.model;
  EmitOptions o;
  o.mesh_path_style = MeshPathStyle::model_uri;
  const std::string out = emit_sdf(m, o);
  EXPECT_NE(out.find("<uri>model://two_link_arm/meshes/base.stl</uri>"), std::string::npos) << out;
  EXPECT_EQ(emit_sdf(m).find("model://"), std::string::npos);
}

TEST(ModelConfigIo, RoundTrip) {
  const ModelConfig c{"arm", "Jo Doe", "an arm", "model.sdf"};
  const std::string text = emit_model_config(c);
  EXPECT_TRUE(oracle::well_formed_xml(text));
  const ModelConfig back = parse_model_config(text);
  EXPECT_EQ(back.name, "arm");
  EXPECT_EQ(back.author, "Jo Doe");
  EXPECT_EQ(back.description, "an arm");
  EXPECT_EQ(back.sdf_file, "model.sdf");
  EXPECT_EQ(emit_model_config({"arm", "", "", "model.sdf"}).find("<author>"), std::string::npos);
}

class LibraryRoundTrip : public testing::TestWithParam<std::string> {};

TEST_P(LibraryRoundTrip, SdfParseEmitIsIdentity) {
  const RobotModel m = fixtures::convert_library(GetParam(), Format::sdf).conversion.model;
  const std::string text = emit_sdf(m);
  std::string err;
  EXPECT_TRUE(oracle::well_formed_xml(text, &err)) << err;
  const RobotModel back = parse_sdf(text);
  const auto diff = compare_models(back, m, 1e-12);
  EXPECT_FALSE(diff) << *diff;
  EXPECT_EQ(emit_sdf(back), text);
}

class TreeRoundTrip : public testing::TestWithParam<std::string> {};

TEST_P(TreeRoundTrip, UrdfParseEmitIsIdentity) {
  const RobotModel m = fixtures::convert_library(GetParam(), Format::urdf).conversion.model;
  const std::string text = emit_urdf(m);
  std::string err;
  EXPECT_TRUE(oracle::well_formed_xml(text, &err)) << err;
  const RobotModel back = parse_urdf(text);
  const auto diff = compare_models(back, m, 1e-12);
  EXPECT_FALSE(diff) << *diff;
  EXPECT_EQ(emit_urdf(back), text);
}

INSTANTIATE_TEST_SUITE_P(Bundled, LibraryRoundTrip, testing::ValuesIn(fixtures::library_ids()));
INSTANTIATE_TEST_SUITE_P(Bundled, TreeRoundTrip, testing::ValuesIn(fixtures::library_tree_ids()));
