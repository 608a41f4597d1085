#include "core/dofmap.hpp"

#include <algorithm>
#include <set>

#include "core/errors.hpp"

namespace dislox {

std::vector<int> all_elements(const Mesh& mesh) {
  std::vector<int> elems(mesh.num_elements());
  for (int e = 0; e < mesh.num_elements(); ++e) elems[e] = e;
  return elems;
}

std::vector<int> elements_in_regions(const Mesh& mesh, const std::set<int>& regions,
                                     bool complement) {
  std::vector<int> elems;
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const bool in = regions.count(mesh.elements[e].region) > 0;
    if (in != complement) elems.push_back(e);
  }
  return elems;
}

DofMap build_dofmap(const Mesh& mesh, const std::vector<int>& elems,
                    const std::set<int>& sigma_tags,
                    const std::function<Vec2(int, const Vec2&)>& value) {
  DofMap dm;
  dm.elems = elems;
  std::set<int> nodes;
  for (int e : elems)
    for (int k = 0; k < 3; ++k) nodes.insert(mesh.elements[e].v[k]);
  dm.active_nodes.assign(nodes.begin(), nodes.end());
  dm.node_to_active.assign(mesh.num_nodes(), -1);
  for (std::size_t i = 0; i < dm.active_nodes.size(); ++i)
    dm.node_to_active[dm.active_nodes[i]] = static_cast<int>(i);

  dm.is_constrained.assign(dm.num_dofs(), 0);
  dm.dirichlet_value.assign(dm.num_dofs(), 0.0);

  if (!sigma_tags.empty()) {
    for (const auto& fa : mesh.facets) {
      if (!sigma_tags.count(fa.tag)) continue;
      for (int k = 0; k < 2; ++k) {
        const int node = fa.v[k];
        if (dm.node_to_active[node] < 0) continue;
        const Vec2 v = value ? value(node, mesh.nodes[node]) : Vec2{0.0, 0.0};
        for (int c = 0; c < 2; ++c) {
          const int d = dm.dof(node, c);
          dm.is_constrained[d] = 1;
          dm.dirichlet_value[d] = c == 0 ? v.x : v.y;
        }
      }
    }
  }

  dm.free_index.assign(dm.num_dofs(), -1);
  for (int d = 0; d < dm.num_dofs(); ++d) {
    if (!dm.is_constrained[d]) {
      dm.free_index[d] = static_cast<int>(dm.free_dofs.size());
      dm.free_dofs.push_back(d);
    }
  }
  return dm;
}

} // namespace dislox
