#include <doctest.h>

#include <cmath>
#include <functional>

#include "core/errors.hpp"
#include "core/meshgen.hpp"
#include "core/quadrature.hpp"
#include "core/slip.hpp"

using namespace dislox;

namespace {

// Fault [0,1] x {0} meshed with nodes 0:(0,0), 1:(0.5,0), 2:(1,0).
FaultTopology straight_fault() {
  FaultTopology ft;
  ft.domain_diameter = 2.0;
  ft.s_facets.push_back({0, 1, -1, -1});
  ft.s_facets.push_back({1, 2, -1, -1});
  ft.s_facet_coords = {{{0, 0}, {0.5, 0}}, {{0.5, 0}, {1, 0}}};
  ft.s_boundary_nodes = {0, 2};
  ft.s_interior_nodes = {1};
  ft.s_boundary_coords = {{0, 0}, {1, 0}};
  return ft;
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int depth = 0) {
  const double m = 0.5 * (a + b);
  auto simpson = [&](double x0, double x1) {
    return (x1 - x0) / 6.0 * (f(x0) + 4.0 * f(0.5 * (x0 + x1)) + f(x1));
  };
  const double whole = simpson(a, b);
  const double halves = simpson(a, m) + simpson(m, b);
  if (depth > 40 || std::abs(halves - whole) < 15.0 * tol) return halves;
  return adaptive_simpson(f, a, m, 0.5 * tol, depth + 1) +
         adaptive_simpson(f, m, b, 0.5 * tol, depth + 1);
}

} // namespace

TEST_CASE("zero slip has zero norm") {
  FaultTopology ft = straight_fault();
  SlipField g;
  g.values[0] = g.values[1] = g.values[2] = {0, 0};
  CHECK(weighted_slip_norm(g, ft) == 0.0);
}

TEST_CASE("interior hat norm matches an adaptive quadrature oracle") {
  FaultTopology ft = straight_fault();
  SlipField g;
  g.values[0] = {0, 0};
  g.values[1] = {1.0, 0};
  g.values[2] = {0, 0};
  const double got = weighted_slip_norm(g, ft);

  auto hat = [](double x) { return x < 0.5 ? 2.0 * x : 2.0 * (1.0 - x); };
  auto rho = [](double x) { return std::min(x, 1.0 - x); };
  const double plain = adaptive_simpson([&](double x) { return hat(x) * hat(x); }, 0, 1, 1e-12);
  const double weighted = adaptive_simpson(
      [&](double x) {
        const double r = rho(x);
        return r == 0.0 ? 0.0 : hat(x) * hat(x) / r;
      },
      1e-14, 1.0 - 1e-14, 1e-12);
  const double oracle = std::sqrt(plain) + std::sqrt(weighted);
  CHECK(got == doctest::Approx(oracle).epsilon(0.01));
}

TEST_CASE("nonzero slip on a fault boundary node is rejected") {
  FaultTopology ft = straight_fault();
  SlipField g;
  g.values[0] = {0.1, 0};
  g.values[1] = {1.0, 0};
  g.values[2] = {0, 0};
  CHECK_THROWS_AS(weighted_slip_norm(g, ft), InvariantError);
  CHECK_THROWS_AS(extend_slip(g, ft), InvariantError);
}

TEST_CASE("zero extension: support and integral preservation") {
  StructuredOpts o;
  o.n = 8;
  o.region_boxes.push_back({{0.25, 0.25, 0.75, 0.5}, 2});
  o.omega_minus_tags = {2};
  o.fault_segments.push_back({0.25, 0.5, 0.75, 0.5});
  GeneratedMesh gm = structured_square(o);
  FaultTopology ft = build_fault_topology(gm.mesh, gm.roles);

  SlipField zero = make_slip(gm.mesh, ft, [](const Vec2&) { return Vec2{0, 0}; });
  auto ext0 = extend_slip(zero, ft);
  for (const auto& v : ext0) CHECK((v.x == 0.0 && v.y == 0.0));

  // Single interior hat: the extension is nonzero at exactly one gamma node.
  const int mid = ft.s_interior_nodes[1];
  SlipField hat;
  for (int n : ft.s_interior_nodes) hat.values[n] = {0, 0};
  for (int n : ft.s_boundary_nodes) hat.values[n] = {0, 0};
  hat.values[mid] = {1.0, 0.0};
  auto ext1 = extend_slip(hat, ft);
  int nonzero = 0;
  for (const auto& v : ext1) nonzero += (v.x != 0.0 || v.y != 0.0) ? 1 : 0;
  CHECK(nonzero == 1);

  // || g_tilde ||_{L2(Gamma)} equals || g ||_{L2(S)}: facet-wise 2-pt Gauss.
  auto value_at = [&](int node) -> Vec2 {
    for (std::size_t i = 0; i < ft.gamma_nodes.size(); ++i)
      if (ft.gamma_nodes[i] == node) return ext1[i];
    return {0, 0};
  };
  const auto& rule = edge_rule(2);
  double on_gamma = 0.0, on_s = 0.0;
  for (const auto& gf : ft.gamma_facets) {
    const Vec2 a = gm.mesh.nodes[gf.a], b = gm.mesh.nodes[gf.b];
    const Vec2 va = value_at(gf.a), vb = value_at(gf.b);
    for (const auto& q : rule) {
      const Vec2 v = va * (1.0 - q.t) + vb * q.t;
      on_gamma += dist(a, b) * q.w * dot(v, v);
    }
  }
  for (const auto& sf : ft.s_facets) {
    const Vec2 a = gm.mesh.nodes[sf.a], b = gm.mesh.nodes[sf.b];
    const Vec2 va = hat.at(sf.a), vb = hat.at(sf.b);
    for (const auto& q : rule) {
      const Vec2 v = va * (1.0 - q.t) + vb * q.t;
      on_s += dist(a, b) * q.w * dot(v, v);
    }
  }
  CHECK(std::sqrt(on_gamma) == doctest::Approx(std::sqrt(on_s)).epsilon(1e-14));
}
