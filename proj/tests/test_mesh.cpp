#include <doctest.h>

#include "core/errors.hpp"
#include "core/mesh.hpp"
#include "core/mesh_io.hpp"

using namespace dislox;

namespace {

// Shoelace area, independent of Mesh::element_area.
double shoelace(const Mesh& m, const Mesh::Element& el) {
  double acc = 0.0;
  for (int k = 0; k < 3; ++k) {
    const Vec2& a = m.nodes[el.v[k]];
    const Vec2& b = m.nodes[el.v[(k + 1) % 3]];
    acc += a.x * b.y - b.x * a.y;
  }
  return 0.5 * acc;
}

const char* kUnitSquare = R"(dmesh 1
dim 2
nodes 4
0 0.0 0.0
1 1.0 0.0
2 1.0 1.0
3 0.0 1.0
elements 2
0 1 0 1 2
1 2 0 2 3
facets 4
0 1 0 1
1 1 1 2
2 1 2 3
3 1 3 0
)";

} // namespace

TEST_CASE("smallest valid mesh parses") {
  const std::string doc = "dmesh 1\ndim 2\nnodes 3\n0 0 0\n1 1 0\n2 0 1\n"
                          "elements 1\n0 1 0 1 2\nfacets 0\n";
  Mesh m = parse_mesh(doc);
  CHECK(m.dim == 2);
  CHECK(m.num_nodes() == 3);
  CHECK(m.num_elements() == 1);
}

TEST_CASE("dangling vertex reference is a topology error") {
  const std::string doc = "dmesh 1\ndim 2\nnodes 4\n0 0 0\n1 1 0\n2 0 1\n3 1 1\n"
                          "elements 1\n0 1 0 1 99\nfacets 0\n";
  CHECK_THROWS_AS(parse_mesh(doc), TopologyError);
}

TEST_CASE("two-region unit square: area by shoelace oracle") {
  Mesh m = parse_mesh(kUnitSquare);
  CHECK(m.region_tags().size() == 2);
  double total = 0.0;
  for (const auto& el : m.elements) total += shoelace(m, el);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
  for (int e = 0; e < m.num_elements(); ++e)
    CHECK(m.element_area(e) == doctest::Approx(shoelace(m, m.elements[e])).epsilon(1e-14));
}

TEST_CASE("syntax errors carry line numbers") {
  const std::string doc = "dmesh 1\ndim 2\nnodes 1\n0 0.0 oops\nelements 0\nfacets 0\n";
  try {
    parse_mesh(doc);
    FAIL("expected SyntaxError");
  } catch (const SyntaxError& e) {
    CHECK(std::string(e.what()).find("line 4") != std::string::npos);
  }
}

TEST_CASE("comments and blank space are ignored") {
  const std::string doc = "# header\ndmesh 1\ndim 2\n\nnodes 3  # three of them\n"
                          "0 0 0\n1 1 0\n2 0 1\nelements 1\n0 1 0 1 2\nfacets 0\n";
  CHECK(parse_mesh(doc).num_nodes() == 3);
}

TEST_CASE("inverted element is rejected") {
  const std::string doc = "dmesh 1\ndim 2\nnodes 3\n0 0 0\n1 1 0\n2 0 1\n"
                          "elements 1\n0 1 0 2 1\nfacets 0\n";
  CHECK_THROWS_AS(parse_mesh(doc), TopologyError);
}

TEST_CASE("disconnected mesh is rejected") {
  const std::string doc = "dmesh 1\ndim 2\nnodes 6\n0 0 0\n1 1 0\n2 0 1\n"
                          "3 5 5\n4 6 5\n5 5 6\n"
                          "elements 2\n0 1 0 1 2\n1 1 3 4 5\nfacets 0\n";
  CHECK_THROWS_AS(parse_mesh(doc), TopologyError);
}

TEST_CASE("write/parse round trip") {
  Mesh m = parse_mesh(kUnitSquare);
  Mesh m2 = parse_mesh(write_mesh(m));
  REQUIRE(m2.num_nodes() == m.num_nodes());
  REQUIRE(m2.num_elements() == m.num_elements());
  for (int i = 0; i < m.num_nodes(); ++i) {
    CHECK(m2.nodes[i].x == m.nodes[i].x);
    CHECK(m2.nodes[i].y == m.nodes[i].y);
  }
  CHECK(write_mesh(m2) == write_mesh(m));
}

TEST_CASE("boundary facets tile the boundary exactly once") {
  Mesh m = parse_mesh(kUnitSquare);
  BoundaryRoles roles;
  roles.sigma_tags = {1};
  validate_roles(m, roles); // throws on any tiling violation

  // Dropping one boundary facet breaks the tiling.
  Mesh broken = m;
  broken.facets.pop_back();
  CHECK_THROWS_AS(validate_roles(broken, roles), ConfigError);

  // Tagging the same edge twice breaks it too.
  Mesh doubled = m;
  doubled.facets.push_back(doubled.facets[0]);
  CHECK_THROWS_AS(validate_roles(doubled, roles), ConfigError);
}
