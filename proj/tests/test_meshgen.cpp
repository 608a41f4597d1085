#include <doctest.h>

#include <cmath>

#include "core/errors.hpp"
#include "core/fault_param.hpp"
#include "core/mesh_io.hpp"
#include "core/meshgen.hpp"

using namespace dislox;

namespace {

FaultParam gentle_fault() {
  FaultParam fp;
  fp.knots = {0.3, 0.4, 0.5, 0.6, 0.7};
  fp.heights = {0.48, 0.5, 0.49, 0.51, 0.5};
  return fp;
}

} // namespace

TEST_CASE("structured generator tags roles consistently") {
  StructuredOpts o;
  o.n = 8;
  o.region_boxes.push_back({{0.25, 0.25, 0.75, 0.5}, 2});
  o.omega_minus_tags = {2};
  o.fault_segments.push_back({0.25, 0.5, 0.75, 0.5});
  o.xi_interval = {{0.375, 0.625}};
  GeneratedMesh gm = structured_square(o);
  validate_roles(gm.mesh, gm.roles);
  int xi_count = 0;
  for (const auto& f : gm.mesh.facets) xi_count += f.tag == kTagXi ? 1 : 0;
  CHECK(xi_count == 2); // [0.375, 0.625] at h = 1/8
  CHECK_THROWS_AS(
      [] {
        StructuredOpts bad;
        bad.n = 8;
        bad.fault_segments.push_back({0.2, 0.5, 0.7, 0.5}); // off grid
        structured_square(bad);
      }(),
      ConfigError);
}

TEST_CASE("realize_fault is deterministic byte for byte") {
  FaultParam fp = gentle_fault();
  MeshingOpts opts;
  opts.h = 1.0 / 16.0;
  RealizedFault a = realize_fault(fp, opts);
  RealizedFault b = realize_fault(fp, opts);
  CHECK(write_mesh(a.mesh) == write_mesh(b.mesh));
}

TEST_CASE("horizontal fault stays exactly at its height") {
  FaultParam fp;
  fp.knots = {0.3, 0.7};
  fp.heights = {0.52, 0.52};
  MeshingOpts opts;
  opts.h = 1.0 / 16.0;
  RealizedFault rf = realize_fault(fp, opts);
  REQUIRE(!rf.topo.s_facets.empty());
  for (const auto& sf : rf.topo.s_facets) {
    CHECK(std::abs(rf.mesh.nodes[sf.a].y - 0.52) <= 1e-12);
    CHECK(std::abs(rf.mesh.nodes[sf.b].y - 0.52) <= 1e-12);
  }
}

TEST_CASE("fault facet lengths sum to the polyline length") {
  FaultParam fp = gentle_fault();
  MeshingOpts opts;
  opts.h = 1.0 / 20.0;
  RealizedFault rf = realize_fault(fp, opts);
  const auto poly = fault_polyline(fp);
  double len = 0.0;
  for (std::size_t i = 0; i + 1 < poly.size(); ++i) len += dist(poly[i], poly[i + 1]);
  CHECK(rf.topo.fault_length() == doctest::Approx(len).epsilon(1e-12));
}

TEST_CASE("mesh quality respects the configured floor") {
  FaultParam fp = gentle_fault();
  MeshingOpts opts;
  opts.h = 1.0 / 16.0;
  RealizedFault rf = realize_fault(fp, opts); // default floor passes
  CHECK(rf.mesh.num_elements() > 0);

  MeshingOpts strict = opts;
  strict.min_angle_deg = 40.0; // above what a jittered grid triangulation reaches
  CHECK_THROWS_AS(realize_fault(fp, strict), GeometryError);
}

TEST_CASE("fault leaving the safety box is rejected") {
  FaultParam fp;
  fp.knots = {0.3, 0.7};
  fp.heights = {0.5, 0.95}; // pokes through the top of the box
  MeshingOpts opts;
  CHECK_THROWS_AS(realize_fault(fp, opts), GeometryError);

  FaultParam deep;
  deep.knots = {0.3, 0.7};
  deep.heights = {0.2, 0.2}; // closure curve exits below
  CHECK_THROWS_AS(realize_fault(deep, opts), GeometryError);
}

TEST_CASE("frame covariance: rotated frame plus rotated graph is the same curve") {
  FaultParam fp = gentle_fault();
  fp.frame_origin = {0.5, 0.5};
  for (auto& k : fp.knots) k -= 0.5;
  for (auto& h : fp.heights) h -= 0.5;

  const double delta = 0.2;
  FaultParam rotated = fp;
  rotated.frame_angle = fp.frame_angle + delta;
  for (std::size_t i = 0; i < fp.knots.size(); ++i) {
    const Vec2 p = rotate({fp.knots[i], fp.heights[i]}, -delta);
    rotated.knots[i] = p.x;
    rotated.heights[i] = p.y;
  }
  const auto a = fault_polyline(fp);
  const auto b = fault_polyline(rotated);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(dist(a[i], b[i]) <= 1e-12);
}

TEST_CASE("oblique frame meshes and solves cleanly") {
  FaultParam fp;
  fp.frame_angle = 0.15;
  fp.frame_origin = {0.5, 0.5};
  fp.knots = {-0.2, 0.0, 0.2};
  fp.heights = {-0.02, 0.0, 0.01};
  MeshingOpts opts;
  opts.h = 1.0 / 16.0;
  RealizedFault rf = realize_fault(fp, opts);
  CHECK(rf.topo.s_boundary_nodes.size() == 2);
  double worst = 180.0;
  for (int e = 0; e < rf.mesh.num_elements(); ++e) {
    const auto& el = rf.mesh.elements[e];
    for (int k = 0; k < 3; ++k) {
      const Vec2 u = rf.mesh.nodes[el.v[(k + 1) % 3]] - rf.mesh.nodes[el.v[k]];
      const Vec2 v = rf.mesh.nodes[el.v[(k + 2) % 3]] - rf.mesh.nodes[el.v[k]];
      worst = std::min(worst, std::atan2(std::abs(cross(u, v)), dot(u, v)) * 180.0 /
                                  3.14159265358979323846);
    }
  }
  CHECK(worst >= 15.0);
}
