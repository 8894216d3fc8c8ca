#include "fixtures.hpp"

#include "rdf_forge/errors.hpp"
#include "rdf_forge/kingraph.hpp"

#include <gtest/gtest.h>

using namespace rdf_forge;
using namespace rdf_forge::kingraph;

namespace {

KinGraph four_bar() {
  return analyze({"ground", "crank", "coupler", "rocker"},
                 {{"j1", "ground", "crank"}, {"j2", "crank", "coupler"}, {"j3", "coupler", "rocker"},
                  {"j4", "ground", "rocker"}},
                 "ground");
}

}  // namespace

TEST(KinGraph, SerialChainIsATree) {
  const auto g = analyze({"a", "b", "c"}, {{"j1", "a", "b"}, {"j2", "b", "c"}}, "a");
  EXPECT_EQ(g.classification, Classification::tree);
  EXPECT_EQ(g.cycle_rank(), 0);
  EXPECT_TRUE(g.loop_edges.empty());
  ASSERT_EQ(g.spanning_edges.size(), 2u);
  EXPECT_FALSE(g.spanning_edges[0].reversed);
}

TEST(KinGraph, FourBarClosesOnThirdJoint) {
  const auto g = four_bar();
  EXPECT_EQ(g.classification, Classification::closed_loop);
  EXPECT_EQ(g.cycle_rank(), 1);
  ASSERT_EQ(g.loop_edges.size(), 1u);
  EXPECT_EQ(g.loop_edges[0], "j3");
  ASSERT_EQ(g.spanning_edges.size(), 3u);
  EXPECT_EQ(g.spanning_edges[0].id, "j1");
  EXPECT_EQ(g.spanning_edges[1].id, "j4");
  EXPECT_EQ(g.spanning_edges[2].id, "j2");
}

TEST(KinGraph, EdgeDeclaredTowardRootIsReversed) {
  const auto g = analyze({"a", "b"}, {{"j", "b", "a"}}, "a");
  ASSERT_EQ(g.spanning_edges.size(), 1u);
  EXPECT_TRUE(g.spanning_edges[0].reversed);
  EXPECT_EQ(g.spanning_edges[0].parent, "a");
  EXPECT_EQ(g.spanning_edges[0].child, "b");
}

TEST(KinGraph, ParallelEdgesFormALoop) {
  const auto g = analyze({"a", "b"}, {{"j1", "a", "b"}, {"j2", "a", "b"}}, "a");
  EXPECT_EQ(g.classification, Classification::closed_loop);
  EXPECT_EQ(g.cycle_rank(), 1);
}

TEST(KinGraph, DisconnectedNodesAreReported) {
  const auto g = analyze({"a", "b", "c", "d"}, {{"j1", "a", "b"}, {"j2", "c", "d"}}, "a");
  EXPECT_EQ(g.classification, Classification::disconnected);
  EXPECT_EQ(g.component_count(), 2);
  EXPECT_EQ(g.unreachable, (std::vector<std::string>{"c", "d"}));
  EXPECT_EQ(g.cycle_rank(), 0);
}

TEST(KinGraph, TwoLoopsHaveCycleRankTwo) {
  const auto g = analyze({"p", "a", "b", "c", "d"},
                         {{"1", "p", "a"}, {"2", "a", "b"}, {"3", "b", "p"}, {"4", "p", "c"}, {"5", "c", "d"},
                          {"6", "d", "p"}},
                         "p");
  EXPECT_EQ(g.cycle_rank(), 2);
  EXPECT_EQ(g.loop_edges.size(), 2u);
}

TEST(KinGraph, AssemblyGraphRequiresConnectivity) {
  auto doc = assembly::parse_assembly(fixtures::pendulum_json(false));
  EXPECT_EQ(build_graph(doc).classification, Classification::tree);
  doc.joints.clear();
  EXPECT_THROW(build_graph(doc), GraphError);
  EXPECT_EQ(analyze_assembly(doc).classification, Classification::disconnected);
}

TEST(Names, Sanitize) {
  EXPECT_EQ(sanitize_name("upper arm"), "upper_arm");
  EXPECT_EQ(sanitize_name("3rd-link"), "_3rd_link");
  EXPECT_EQ(sanitize_name(""), "_");
  EXPECT_EQ(sanitize_name("ok_Name9"), "ok_Name9");
}

TEST(Names, AllocatorSuffixesAndReservesWorld) {
  NameAllocator names;
  EXPECT_EQ(names.allocate("link"), "link");
  EXPECT_EQ(names.allocate("link"), "link_2");
  EXPECT_EQ(names.allocate("link"), "link_3");
  EXPECT_EQ(names.allocate("world"), "world_2");
  EXPECT_TRUE(names.taken("link_2"));
}

TEST(Names, ComponentsAndJointsShareOneNamespace) {
  auto doc = assembly::parse_assembly(fixtures::pendulum_json(false));
  doc.joints[0].name = "bob";
  const auto names = uniquify_names(doc);
  EXPECT_EQ(names.component("bob"), "bob");
  EXPECT_EQ(names.joint("hinge"), "bob_2");
}

TEST(Dot, LoopEdgesAreDashed) {
  const std::string dot = to_dot(four_bar(), "four_bar", {{"ground", "Ground"}});
  EXPECT_EQ(dot.rfind("digraph", 0), 0u);
  EXPECT_NE(dot.find("Ground"), std::string::npos);
  std::size_t dashed = 0;
  for (std::size_t p = dot.find("dashed"); p != std::string::npos; p = dot.find("dashed", p + 1)) ++dashed;
  EXPECT_EQ(dashed, 1u);
  const auto line_start = dot.rfind('\n', dot.find("dashed")) + 1;
  EXPECT_NE(dot.substr(line_start, dot.find("dashed") - line_start).find("j3"), std::string::npos);
}
