#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "core/config.hpp"
#include "core/topology.hpp"
#include "core/errors.hpp"

using namespace dislox;

namespace {

const char* kMinimalForward = R"(
[mesh]
generator = unit_square
n = 8

[fault]
segment = [0.25, 0.5, 0.75, 0.5]
box = [0.25, 0.25, 0.75, 0.5]

[material.1]
lambda = 1.0
mu = 1.0
[material.2]
lambda = 1.0
mu = 1.0

[admissibility]
alpha0 = 0.5
beta0 = 2.0
M = 10.0

[slip]
bump = { center = 0.5, halfwidth = 0.5, amplitude = 0.0625, direction = [1, 0] }
)";

} // namespace

TEST_CASE("minimal forward config parses and validates") {
  Scenario sc = parse_scenario(kMinimalForward, "");
  sc.require_for("forward");
  CHECK(sc.mesh.num_elements() == 128);
  CHECK(sc.roles.fault_tags.count(2) == 1);
  CHECK(sc.slip.kind == SlipSpec::Kind::Bump);
  CHECK(sc.slip.bump_amplitude == 0.0625);
}

TEST_CASE("misspelled key is a hard error naming the key") {
  std::string text = kMinimalForward;
  text += "\n[solver]\ncg_toll = 1e-8\n";
  try {
    parse_scenario(text, "");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("cg_toll") != std::string::npos);
  }
}

TEST_CASE("unknown section is rejected") {
  std::string text = kMinimalForward;
  text += "\n[solverr]\ncg_tol = 1e-8\n";
  CHECK_THROWS_AS(parse_scenario(text, ""), ConfigError);
}

TEST_CASE("inverse command requires the inverse section") {
  Scenario sc = parse_scenario(kMinimalForward, "");
  CHECK_THROWS_AS(sc.require_for("inverse"), ConfigError);
}

TEST_CASE("duplicate key is rejected with its line") {
  std::string text = kMinimalForward;
  text += "\n[solver]\ncg_tol = 1e-8\ncg_tol = 1e-9\n";
  CHECK_THROWS_AS(parse_scenario(text, ""), ConfigError);
}

TEST_CASE("material must cover every region") {
  std::string text = R"(
[mesh]
generator = unit_square
n = 8
[fault]
segment = [0.25, 0.5, 0.75, 0.5]
box = [0.25, 0.25, 0.75, 0.5]
[material.1]
lambda = 1.0
mu = 1.0
[admissibility]
alpha0 = 0.5
beta0 = 2.0
M = 10.0
)";
  CHECK_THROWS_AS(parse_scenario(text, ""), ConfigError);
}

TEST_CASE("mesh needs exactly one source") {
  CHECK_THROWS_AS(parse_scenario("[mesh]\nn = 8\n", ""), ConfigError);
  CHECK_THROWS_AS(parse_scenario("[mesh]\nfile = \"a\"\ngenerator = unit_square\n", ""),
                  ConfigError);
}

TEST_CASE("affine material coefficients parse from arrays") {
  std::string text = kMinimalForward;
  const auto pos = text.find("[material.1]\nlambda = 1.0\nmu = 1.0");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, std::string("[material.1]\nlambda = 1.0\nmu = 1.0").size(),
               "[material.1]\nlambda = [1.0, 0.0, 0.2]\nmu = [1.5, 0.1, 0.0]");
  Scenario sc = parse_scenario(text, "");
  CHECK(sc.material.regions.at(1).first.b2 == 0.2);
  CHECK(sc.material.regions.at(1).second.b1 == 0.1);
}

TEST_CASE("solver and output options are honored") {
  std::string text = kMinimalForward;
  text += "\n[solver]\ncg_tol = 1e-8\nmethod = interface\n[output]\ndir = results\nformat = vtk\n";
  Scenario sc = parse_scenario(text, "/base");
  CHECK(sc.solver.cg_tol == 1e-8);
  CHECK(sc.default_method == "interface");
  CHECK(sc.output_dir == "/base/results");
  CHECK(sc.export_format == "vtk");
}

TEST_CASE("mms generator rejects user material") {
  const char* text = R"(
[mesh]
generator = mms
kind = smooth_jump
n = 16
[material.1]
lambda = 1.0
mu = 1.0
)";
  CHECK_THROWS_AS(parse_scenario(text, ""), ConfigError);
}

TEST_CASE("modal slip and tangent bump directions parse") {
  std::string text = kMinimalForward;
  const auto pos = text.find("bump = ");
  REQUIRE(pos != std::string::npos);
  std::string modal = text;
  modal.replace(pos, text.find(')') - pos, "modes = [0.5, 0.1, -0.2, 0.0]\n");
  Scenario sc = parse_scenario(modal.substr(0, modal.find("modes")) +
                                   "modes = [0.5, 0.1, -0.2, 0.0]\n",
                               "");
  CHECK(sc.slip.kind == SlipSpec::Kind::Modes);
  CHECK(sc.slip.mode_coeffs.size() == 4);

  std::string tangent = kMinimalForward;
  tangent.replace(tangent.find("direction = [1, 0]"), std::string("direction = [1, 0]").size(),
                  "direction = tangent");
  Scenario sc2 = parse_scenario(tangent, "");
  CHECK(sc2.slip.bump_along_tangent);
}

TEST_CASE("slip from a nodal csv file") {
  Scenario sc = parse_scenario(kMinimalForward, "");
  FaultTopology ft = build_fault_topology(sc.mesh, sc.roles);
  std::string csv = "node_id,gx,gy\n";
  for (int n : ft.s_interior_nodes) csv += std::to_string(n) + ",0.01,0\n";
  for (int n : ft.s_boundary_nodes) csv += std::to_string(n) + ",0,0\n";
  const std::string path = "test_slip_tmp.csv";
  {
    std::ofstream out(path);
    out << csv;
  }
  std::string text = kMinimalForward;
  const std::string bump_line =
      "bump = { center = 0.5, halfwidth = 0.5, amplitude = 0.0625, direction = [1, 0] }";
  text.replace(text.find(bump_line), bump_line.size(), "file = \"" + path + "\"");
  Scenario sc2 = parse_scenario(text, "");
  SlipField slip = sc2.build_slip(sc2.mesh, ft);
  for (int n : ft.s_interior_nodes) CHECK(slip.at(n).x == 0.01);
  std::filesystem::remove(path);
}
