#include "fixtures.hpp"
#include "oracles.hpp"

#include "rdf_forge/cli.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace rdf_forge;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "rdf-forge");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::map<std::string, std::string> snapshot(const fs::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) files[fs::relative(e.path(), root).generic_string()] = fixtures::read_file(e.path());
  }
  return files;
}

}  // namespace

TEST(Cli, ConvertPendulum) {
  oracle::TempDir dir("cli");
  const auto input = fixtures::write_pendulum(dir.path());
  const auto out = dir.path() / "out";
  const Outcome r = run({"convert", input.string(), "--simulator", "pybullet", "--out", out.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("converted pendulum: 2 links, 1 joints, tree\n", 0), 0u) << r.out;
  EXPECT_NE(r.out.find("format urdf, simulator pybullet\n"), std::string::npos);
  EXPECT_NE(r.out.find("  pendulum/pendulum.urdf\n"), std::string::npos);
  EXPECT_TRUE(fs::is_regular_file(out / "pendulum" / "pendulum.urdf"));
  EXPECT_TRUE(fs::is_regular_file(out / "pendulum" / "meshes" / "bob.stl"));
}

TEST(Cli, RepeatedRunsAreByteIdentical) {
  oracle::TempDir dir("cli");
  const auto input = fixtures::write_pendulum(dir.path());
  ASSERT_EQ(run({"convert", input.string(), "--format", "sdf", "--simulator", "gazebo", "--out",
                 (dir.path() / "a").string()})
                .code,
            0);
  ASSERT_EQ(run({"convert", input.string(), "--format", "sdf", "--simulator", "gazebo", "--out",
                 (dir.path() / "b").string()})
                .code,
            0);
  const auto a = snapshot(dir.path() / "a");
  EXPECT_EQ(a, snapshot(dir.path() / "b"));
  EXPECT_TRUE(a.count("pendulum/model.config"));
  for (const auto& [path, bytes] : a) EXPECT_EQ(bytes.find("generated by"), std::string::npos) << path;
}

TEST(Cli, StampIsOptIn) {
  oracle::TempDir dir("cli");
  const auto input = fixtures::write_pendulum(dir.path());
  ASSERT_EQ(run({"convert", input.string(), "--stamp", "--out", dir.path().string()}).code, 0);
  EXPECT_NE(fixtures::read_file(dir.path() / "pendulum" / "pendulum.urdf").find("<!-- generated by rdf-forge on "),
            std::string::npos);
}

TEST(Cli, ProfileAndUsageErrorsExitTwo) {
  oracle::TempDir dir("cli");
  const auto input = fixtures::write_pendulum(dir.path());
  EXPECT_EQ(run({"convert", input.string(), "--format", "mjcf"}).code, 2);
  const Outcome isaac = run({"convert", input.string(), "--simulator", "isaac"});
  EXPECT_EQ(isaac.code, 2);
  EXPECT_NE(isaac.err.find("isaac"), std::string::npos);
  EXPECT_EQ(run({"convert"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"mesh-props", input.string(), "--density", "-1"}).code, 2);
  EXPECT_FALSE(fs::exists(dir.path() / "pendulum"));
}

TEST(Cli, ParseErrorsExitTwo) {
  oracle::TempDir dir("cli");
  fixtures::write_file(dir.path() / "x.txt", "hello");
  fixtures::write_file(dir.path() / "bad.urdf", "<robot name='r'><link name='a'></robot>");
  EXPECT_EQ(run({"inspect", (dir.path() / "x.txt").string()}).code, 2);
  const Outcome bad = run({"validate", (dir.path() / "bad.urdf").string()});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("line 1"), std::string::npos) << bad.err;
  EXPECT_EQ(run({"inspect", (dir.path() / "missing.json").string()}).code, 2);
}

TEST(Cli, ClosedLoopToUrdfExitsOne) {
  oracle::TempDir dir("cli");
  const Outcome r = run({"library", "export", "four_bar", "--format", "urdf", "--out", dir.path().string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("rocker_coupler"), std::string::npos) << r.err;
  EXPECT_TRUE(fs::is_empty(dir.path()));
}

TEST(Cli, LibraryListAndExport) {
  const Outcome list = run({"library", "list"});
  ASSERT_EQ(list.code, 0);
  for (const auto& id : fixtures::library_ids()) EXPECT_NE(list.out.find(id), std::string::npos) << id;
  EXPECT_EQ(list.out.rfind("ID", 0), 0u);

  oracle::TempDir dir("cli");
  const Outcome r = run({"library", "export", "four_bar", "--format", "sdf", "--simulator", "gazebo", "--out",
                     dir.path().string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("closed_loop (cycle rank 1)"), std::string::npos) << r.out;
  EXPECT_TRUE(fs::is_regular_file(dir.path() / "four_bar" / "model.sdf"));
  EXPECT_TRUE(fs::is_regular_file(dir.path() / "four_bar" / "model.config"));
  EXPECT_EQ(run({"library", "export", "nope"}).code, 2);
}

TEST(Cli, ValidateOutputs) {
  oracle::TempDir dir("cli");
  ASSERT_EQ(run({"library", "export", "parallel_gripper", "--format", "sdf", "--out", dir.path().string()}).code, 0);
  const auto sdf = (dir.path() / "parallel_gripper" / "model.sdf").string();
  const Outcome text = run({"validate", sdf});
  EXPECT_EQ(text.code, 0) << text.out;
  EXPECT_NE(text.out.find("info R6 left_inner_tip: "), std::string::npos) << text.out;
  EXPECT_NE(text.out.find("0 error(s), 0 warning(s), 2 info\n"), std::string::npos);
  const Outcome machine = run({"validate", "--machine", sdf});
  EXPECT_EQ(machine.out.rfind("info\tR6\tleft_inner_tip\t", 0), 0u) << machine.out;

  fs::remove(dir.path() / "parallel_gripper" / "meshes" / "palm.stl");
  const Outcome missing = run({"validate", sdf});
  EXPECT_EQ(missing.code, 1);
  EXPECT_NE(missing.out.find("error R7 palm: mesh file not found"), std::string::npos) << missing.out;

  const Outcome assembly = run({"validate", (fixtures::library_dir() / "four_bar.asm.json").string()});
  EXPECT_EQ(assembly.code, 0) << assembly.out;
  EXPECT_NE(assembly.out.find("R6 rocker_coupler"), std::string::npos);
}

TEST(Cli, InspectSummaries) {
  const Outcome r = run({"inspect", (fixtures::library_dir() / "four_bar.asm.json").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("4 links, 4 joints, closed_loop, cycle rank 1\n"), std::string::npos) << r.out;
  const Outcome g = run({"inspect", (fixtures::library_dir() / "parallel_gripper.asm.json").string()});
  EXPECT_NE(g.out.find("closed_loop, cycle rank 2\n"), std::string::npos) << g.out;

  oracle::TempDir dir("cli");
  ASSERT_EQ(run({"library", "export", "two_link_arm", "--out", dir.path().string()}).code, 0);
  const Outcome u = run({"inspect", (dir.path() / "two_link_arm" / "two_link_arm.urdf").string()});
  EXPECT_EQ(u.code, 0);
  EXPECT_NE(u.out.find("model two_link_arm (urdf)\n"), std::string::npos) << u.out;
  EXPECT_NE(u.out.find("3 links, 2 joints, tree, cycle rank 0\n"), std::string::npos) << u.out;
}

TEST(Cli, GraphDot) {
  const Outcome r = run({"graph", "--dot", (fixtures::library_dir() / "four_bar.asm.json").string()});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("digraph", 0), 0u);
  EXPECT_NE(r.out.find("dashed"), std::string::npos);

  oracle::TempDir dir("cli");
  auto doc = fixtures::pendulum_json(false);
  doc.replace(doc.find("\"joints\": ["), std::string::npos, "\"joints\": []}");
  fixtures::write_file(dir.path() / "loose.json", doc);
  const Outcome loose = run({"graph", (dir.path() / "loose.json").string()});
  EXPECT_EQ(loose.code, 1);
  EXPECT_EQ(loose.out.rfind("digraph", 0), 0u);
  EXPECT_NE(loose.err.find("bob"), std::string::npos);
}

TEST(Cli, MeshProps) {
  oracle::TempDir dir("cli");
  fixtures::write_file(dir.path() / "cube.stl", oracle::binary_stl(oracle::unit_cube_triangles()));
  const Outcome r = run({"mesh-props", (dir.path() / "cube.stl").string(), "--density", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("watertight: yes\n"), std::string::npos);
  EXPECT_NE(r.out.find("volume 1\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("mass 2\n"), std::string::npos);
  EXPECT_NE(r.out.find("com 0.5 0.5 0.5\n"), std::string::npos);

  auto open = oracle::unit_cube_triangles();
  open.pop_back();
  fixtures::write_file(dir.path() / "open.stl", oracle::binary_stl(open));
  const Outcome o = run({"mesh-props", (dir.path() / "open.stl").string()});
  EXPECT_EQ(o.code, 1);
  EXPECT_NE(o.out.find("watertight: no (3 open edges)"), std::string::npos) << o.out;
}

TEST(Cli, HelpExitsZero) {
  const Outcome r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("convert"), std::string::npos);
}
