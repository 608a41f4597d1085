#pragma once

#include <functional>
#include <vector>

#include "core/mesh.hpp"

namespace dislox {

/// Maps (node, component) pairs of an element subset to global dof indices,
/// with Dirichlet-constrained dofs flagged and numbered out of the free set.
/// Dof layout: 2*active_node_index + component.
struct DofMap {
  std::vector<int> elems;          // element subset this map covers
  std::vector<int> active_nodes;   // sorted node ids touched by the subset
  std::vector<int> node_to_active; // node id -> active index, -1 outside
  std::vector<char> is_constrained;
  std::vector<double> dirichlet_value;
  std::vector<int> free_index; // dof -> 0..n_free-1 or -1
  std::vector<int> free_dofs;  // inverse of free_index

  int num_dofs() const { return static_cast<int>(active_nodes.size()) * 2; }
  int num_free() const { return static_cast<int>(free_dofs.size()); }

  int dof(int node, int comp) const {
    const int a = node_to_active[node];
    return a < 0 ? -1 : 2 * a + comp;
  }
  int dof_node(int dof) const { return active_nodes[dof / 2]; }
  int dof_comp(int dof) const { return dof % 2; }
};

std::vector<int> all_elements(const Mesh& mesh);
std::vector<int> elements_in_regions(const Mesh& mesh, const std::set<int>& regions,
                                     bool complement = false);

/// Build a dof map over an element subset. Nodes on sigma-tagged facets are
/// fully constrained; `value` (optional) supplies inhomogeneous Dirichlet
/// data per node, defaulting to zero displacement.
DofMap build_dofmap(const Mesh& mesh, const std::vector<int>& elems,
                    const std::set<int>& sigma_tags = {},
                    const std::function<Vec2(int, const Vec2&)>& value = {});

} // namespace dislox
