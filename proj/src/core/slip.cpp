#include "core/slip.hpp"

#include <algorithm>
#include <cmath>

#include "core/errors.hpp"
#include "core/quadrature.hpp"

namespace dislox {

SlipField make_slip(const Mesh& mesh, const FaultTopology& ft,
                    const std::function<Vec2(const Vec2&)>& g) {
  SlipField slip;
  for (int node : ft.s_interior_nodes) slip.values[node] = g(mesh.nodes[node]);
  for (int node : ft.s_boundary_nodes) slip.values[node] = {0.0, 0.0};
  return slip;
}

void validate_slip(const SlipField& slip, const FaultTopology& ft) {
  for (const auto& [node, v] : slip.values) {
    if (!std::isfinite(v.x) || !std::isfinite(v.y))
      throw InvariantError("non-finite slip at node " + std::to_string(node));
  }
  for (int node : ft.s_boundary_nodes) {
    const Vec2 v = slip.at(node);
    if (v.x != 0.0 || v.y != 0.0)
      throw InvariantError("nonzero slip on fault boundary node " + std::to_string(node));
  }
}

double weighted_slip_norm(const SlipField& slip, const FaultTopology& ft) {
  validate_slip(slip, ft);
  const auto& rule = edge_rule(2);
  double plain = 0.0, weighted = 0.0;
  for (std::size_t f = 0; f < ft.s_facets.size(); ++f) {
    const auto& sf = ft.s_facets[f];
    const auto& [pa, pb] = ft.s_facet_coords[f];
    const double len = dist(pa, pb);
    const Vec2 ga = slip.at(sf.a), gb = slip.at(sf.b);
    for (const auto& q : rule) {
      const Vec2 g = ga * (1.0 - q.t) + gb * q.t;
      const Vec2 x = pa * (1.0 - q.t) + pb * q.t;
      const double g2 = dot(g, g);
      plain += len * q.w * g2;
      if (!ft.s_boundary_coords.empty()) {
        double rho = 1e300;
        for (const auto& p : ft.s_boundary_coords) rho = std::min(rho, dist(x, p));
        weighted += len * q.w * g2 / rho;
      }
    }
  }
  return std::sqrt(plain) + std::sqrt(weighted);
}

std::vector<Vec2> extend_slip(const SlipField& slip, const FaultTopology& ft) {
  validate_slip(slip, ft);
  std::vector<Vec2> g(ft.gamma_nodes.size(), Vec2{0.0, 0.0});
  for (std::size_t i = 0; i < ft.gamma_nodes.size(); ++i) {
    const int node = ft.gamma_nodes[i];
    if (std::binary_search(ft.s_interior_nodes.begin(), ft.s_interior_nodes.end(), node))
      g[i] = slip.at(node);
  }
  return g;
}

} // namespace dislox
