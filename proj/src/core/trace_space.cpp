#include "core/trace_space.hpp"

namespace dislox {

TraceSpace TraceSpace::build(const FaultTopology& ft, const Mesh& mesh) {
  TraceSpace ts;
  ts.nodes = ft.gamma_nodes;
  for (std::size_t i = 0; i < ts.nodes.size(); ++i) ts.index[ts.nodes[i]] = static_cast<int>(i);

  ts.s_interior.assign(ts.nodes.size(), 0);
  ts.s_boundary.assign(ts.nodes.size(), 0);
  for (int n : ft.s_interior_nodes) ts.s_interior[ts.index.at(n)] = 1;
  for (int n : ft.s_boundary_nodes) ts.s_boundary[ts.index.at(n)] = 1;

  std::vector<Eigen::Triplet<double>> trip;
  for (const auto& gf : ft.gamma_facets) {
    const double len = dist(mesh.nodes[gf.a], mesh.nodes[gf.b]);
    const int ia = ts.index.at(gf.a), ib = ts.index.at(gf.b);
    for (int c = 0; c < 2; ++c) {
      trip.emplace_back(2 * ia + c, 2 * ia + c, len / 3.0);
      trip.emplace_back(2 * ib + c, 2 * ib + c, len / 3.0);
      trip.emplace_back(2 * ia + c, 2 * ib + c, len / 6.0);
      trip.emplace_back(2 * ib + c, 2 * ia + c, len / 6.0);
    }
  }
  ts.mass.resize(ts.dim(), ts.dim());
  ts.mass.setFromTriplets(trip.begin(), trip.end());
  return ts;
}

} // namespace dislox
