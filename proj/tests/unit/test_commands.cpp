#include <cmath>
#include <filesystem>
#include <string>

#include <gtest/gtest.h>

#include "json.hpp"

#include "confspec/commands.hpp"

namespace confspec {
namespace {

using nlohmann::json;

RunConfig config(const std::string& command, const std::string& surface) {
  RunConfig c;
  c.command = command;
  c.surface = surface;
  return c;
}

TEST(Spectrum, Sphere) {
  RunConfig c = config("spectrum", "sphere");
  c.subdivisions = 4;
  const CommandOutput out = run_command(c);
  ASSERT_EQ(out.exit_code, 0) << out.message;
  const json doc = json::parse(out.document);
  EXPECT_EQ(doc["schema_version"], 1);
  EXPECT_NEAR(doc["spectrum"]["eigenvalues"][1].get<double>(), 2.0, 0.02);
}

TEST(Spectrum, EquilateralTorus) {
  RunConfig c = config("spectrum", "torus");
  c.resolution = 48;
  const CommandOutput out = run_command(c);
  ASSERT_EQ(out.exit_code, 0) << out.message;
  const json doc = json::parse(out.document);
  EXPECT_NEAR(doc["spectrum"]["eigenvalues"][1].get<double>() / (16.0 * M_PI * M_PI / 3.0), 1.0, 0.005);
}

TEST(Usage, InvalidSurface) {
  const CommandOutput out = run_command(config("spectrum", "dodecahedron"));
  EXPECT_EQ(out.exit_code, 2);
  EXPECT_FALSE(out.message.empty());
}

TEST(Usage, InvalidCommandFactorAndFormat) {
  EXPECT_EQ(run_command(config("frobnicate", "sphere")).exit_code, 2);
  RunConfig bad_factor = config("spectrum", "sphere");
  bad_factor.factor = "bump:1,2";
  EXPECT_EQ(run_command(bad_factor).exit_code, 2);
  RunConfig bad_format = config("table", "sphere");
  bad_format.format = "xml";
  EXPECT_EQ(run_command(bad_format).exit_code, 2);
  RunConfig klein_bound = config("verify-bound", "klein");
  EXPECT_EQ(run_command(klein_bound).exit_code, 2);
}

TEST(Table, DefaultAndGenus) {
  RunConfig c = config("table", "sphere");
  c.genus_range = std::make_pair(0, 5);
  const CommandOutput out = run_command(c);
  ASSERT_EQ(out.exit_code, 0);
  const json doc = json::parse(out.document);
  EXPECT_EQ(doc["rows"].size(), 8u);
  EXPECT_EQ(doc["genus_bounds"].size(), 6u);
  c.format = "csv";
  const CommandOutput csv = run_command(c);
  ASSERT_EQ(csv.exit_code, 0);
  EXPECT_NE(csv.document.find("S^2"), std::string::npos);
  RunConfig bad = config("table", "sphere");
  bad.genus_range = std::make_pair(3, 1);
  EXPECT_EQ(run_command(bad).exit_code, 2);
}

TEST(VerifyBound, SphereWithBump) {
  RunConfig c = config("verify-bound", "sphere");
  c.subdivisions = 3;
  c.factor = "bump";
  const CommandOutput out = run_command(c);
  ASSERT_EQ(out.exit_code, 0) << out.message;
  const json doc = json::parse(out.document);
  EXPECT_TRUE(doc["bound"]["chain_ok"].get<bool>());
  EXPECT_LT(doc["bound"]["lambda2_bar_fem"].get<double>(), 16.0 * M_PI);
  EXPECT_TRUE(out.artifacts.count("chain.svg"));
  EXPECT_TRUE(out.artifacts.count("landscape.svg"));
  EXPECT_EQ(out.artifacts.at("chain.svg").rfind("<svg", 0), 0u);
}

TEST(VerifyBound, SquareTorus) {
  RunConfig c = config("verify-bound", "torus");
  c.lattice = "square";
  c.resolution = 24;
  const CommandOutput out = run_command(c);
  ASSERT_EQ(out.exit_code, 0) << out.message;
  const json doc = json::parse(out.document);
  EXPECT_TRUE(doc["bound"]["chain_ok"].get<bool>());
  EXPECT_LT(doc["bound"]["lambda2_bar_fem"].get<double>(), 8.0 * M_PI * M_PI);
}

TEST(Determinism, IdenticalRunsGiveIdenticalBytes) {
  RunConfig c = config("verify-bound", "sphere");
  c.subdivisions = 2;
  c.factor = "random-fourier:4,4,1.0";
  c.seed = 9;
  const CommandOutput a = run_command(c);
  const CommandOutput b = run_command(c);
  EXPECT_EQ(a.document, b.document);
  EXPECT_EQ(a.artifacts, b.artifacts);
}

TEST(Export, SpectrumWritesMatricesAndMesh) {
  const auto dir = std::filesystem::temp_directory_path() / "confspec_export_test";
  std::filesystem::create_directories(dir);
  RunConfig c = config("spectrum", "sphere");
  c.subdivisions = 1;
  c.export_prefix = (dir / "mesh").string();
  const CommandOutput out = run_command(c);
  ASSERT_EQ(out.exit_code, 0) << out.message;
  for (const char* name : {"mesh_stiffness.mtx", "mesh_mass.mtx", "mesh.off", "mesh.json"}) {
    EXPECT_TRUE(std::filesystem::exists(dir / name)) << name;
  }
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace confspec
