#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "core/export.hpp"
#include "core/meshgen.hpp"
#include "core/topology.hpp"

using namespace dislox;

namespace {

Mesh tiny_mesh() {
  Mesh m;
  m.nodes = {{0, 0}, {1, 0}, {0, 1}};
  m.elements.push_back({1, {0, 1, 2}});
  return m;
}

} // namespace

TEST_CASE("vtk writer: three points, zero vectors") {
  Mesh m = tiny_mesh();
  std::vector<Vec2> u(3, Vec2{0, 0});
  const std::string vtk = vtk_displacement(m, u);
  CHECK(vtk.find("# vtk DataFile Version 3.0") == 0);
  CHECK(vtk.find("DATASET UNSTRUCTURED_GRID") != std::string::npos);
  CHECK(vtk.find("POINTS 3 double") != std::string::npos);
  CHECK(vtk.find("CELL_TYPES 1") != std::string::npos);
  CHECK(vtk.find("VECTORS displacement double") != std::string::npos);
  int zero_rows = 0;
  std::istringstream in(vtk.substr(vtk.find("VECTORS")));
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line))
    if (line == "0 0 0") ++zero_rows;
  CHECK(zero_rows == 3);
}

TEST_CASE("csv displacement round trip is bitwise") {
  Mesh m = tiny_mesh();
  std::vector<Vec2> u = {{0.1234567890123456789, -1e-17}, {3.14159265358979312, 2.0 / 3.0},
                         {-0.0, 1e300}};
  const std::string csv = csv_displacement(m, u);
  const auto back = parse_csv_displacement(csv, 3);
  for (int i = 0; i < 3; ++i) {
    CHECK(back[i].x == u[i].x);
    CHECK(back[i].y == u[i].y);
  }
  CHECK(csv_displacement(m, back) == csv);
}

TEST_CASE("split mesh export carries the duplicated point") {
  StructuredOpts o;
  o.n = 8;
  o.region_boxes.push_back({{0.25, 0.25, 0.75, 0.5}, 2});
  o.omega_minus_tags = {2};
  o.fault_segments.push_back({0.25, 0.5, 0.5, 0.5}); // 2 facets -> 1 interior node
  GeneratedMesh gm = structured_square(o);
  FaultTopology ft = build_fault_topology(gm.mesh, gm.roles);
  Mesh split = split_fault_nodes(gm.mesh, ft);
  REQUIRE(ft.split_map.size() == 1);
  std::vector<Vec2> u(split.num_nodes(), Vec2{0, 0});
  const std::string vtk = vtk_displacement(split, u);
  CHECK(vtk.find("POINTS " + std::to_string(gm.mesh.num_nodes() + 1) + " double") !=
        std::string::npos);
}

TEST_CASE("surface data csv round trip") {
  SurfaceData d;
  d.sampling.points = {{0.4, 1.0}, {0.5, 1.0}};
  d.values = {{1e-3, -2e-4}, {0.125, 0.25}};
  SurfaceData back = parse_csv_surface_data(csv_surface_data(d));
  REQUIRE(back.values.size() == 2);
  CHECK(back.values[1].x == 0.125);
  CHECK(back.sampling.points[0].x == 0.4);
}

TEST_CASE("atomic write leaves no temp file") {
  namespace fs = std::filesystem;
  const std::string dir = "test_export_tmp";
  atomic_write(dir + "/a/b.txt", "hello");
  CHECK(read_text_file(dir + "/a/b.txt") == "hello");
  CHECK_FALSE(fs::exists(dir + "/a/b.txt.tmp"));
  fs::remove_all(dir);
}

TEST_CASE("content hash is stable and content-sensitive") {
  CHECK(content_hash("abc") == content_hash("abc"));
  CHECK(content_hash("abc") != content_hash("abd"));
  CHECK(content_hash("").size() == 16);
}
