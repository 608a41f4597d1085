#pragma once

#include <map>

#include "core/assembly.hpp"
#include "core/topology.hpp"

namespace dislox {

/// P1 nodal trace space on the closed interface polyline. The mass matrix
/// realizes the duality pairing between trace functions and tractions; dof
/// layout is 2*index(node) + component over ft.gamma_nodes.
struct TraceSpace {
  std::vector<int> nodes;
  std::map<int, int> index;
  SpMat mass;
  std::vector<char> s_interior; // per node: interior fault node
  std::vector<char> s_boundary;

  static TraceSpace build(const FaultTopology& ft, const Mesh& mesh);

  int dim() const { return static_cast<int>(nodes.size()) * 2; }
  int dof(int node, int comp) const { return 2 * index.at(node) + comp; }
};

} // namespace dislox
