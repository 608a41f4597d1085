#include "core/mesh.hpp"

#include <algorithm>
#include <queue>

#include "core/errors.hpp"

namespace dislox {

double Mesh::diameter() const {
  double lo_x = 1e300, hi_x = -1e300, lo_y = 1e300, hi_y = -1e300;
  for (const auto& p : nodes) {
    lo_x = std::min(lo_x, p.x);
    hi_x = std::max(hi_x, p.x);
    lo_y = std::min(lo_y, p.y);
    hi_y = std::max(hi_y, p.y);
  }
  if (nodes.empty()) return 0.0;
  return std::hypot(hi_x - lo_x, hi_y - lo_y);
}

std::set<int> Mesh::region_tags() const {
  std::set<int> tags;
  for (const auto& e : elements) tags.insert(e.region);
  return tags;
}

EdgeAdjacency EdgeAdjacency::build(const Mesh& mesh) {
  EdgeAdjacency adj;
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const auto& el = mesh.elements[e];
    for (int k = 0; k < 3; ++k) {
      EdgeKey key(el.v[k], el.v[(k + 1) % 3]);
      auto [it, inserted] = adj.edge_elems.try_emplace(key, std::array<int, 2>{e, -1});
      if (!inserted) {
        if (it->second[1] != -1)
          throw TopologyError("edge (" + std::to_string(key.a) + "," + std::to_string(key.b) +
                              ") shared by more than two elements");
        it->second[1] = e;
      }
    }
  }
  return adj;
}

bool EdgeAdjacency::is_boundary(const EdgeKey& e) const {
  auto it = edge_elems.find(e);
  return it != edge_elems.end() && it->second[1] == -1;
}

void validate_mesh(const Mesh& mesh) {
  if (mesh.dim != 2) throw TopologyError("only dim 2 meshes are supported");
  const int n = mesh.num_nodes();
  if (n < 3) throw TopologyError("mesh needs at least 3 nodes");
  if (mesh.elements.empty()) throw TopologyError("mesh has no elements");

  for (int e = 0; e < mesh.num_elements(); ++e) {
    const auto& el = mesh.elements[e];
    for (int k = 0; k < 3; ++k) {
      if (el.v[k] < 0 || el.v[k] >= n)
        throw TopologyError("element " + std::to_string(e) + " references unknown node id " +
                            std::to_string(el.v[k]));
    }
    if (el.v[0] == el.v[1] || el.v[1] == el.v[2] || el.v[0] == el.v[2])
      throw TopologyError("element " + std::to_string(e) + " has repeated vertices");
    if (mesh.element_area(e) <= 0.0)
      throw TopologyError("element " + std::to_string(e) +
                          " has non-positive area (vertex ordering must be counterclockwise)");
  }

  for (std::size_t f = 0; f < mesh.facets.size(); ++f) {
    const auto& fa = mesh.facets[f];
    for (int k = 0; k < 2; ++k) {
      if (fa.v[k] < 0 || fa.v[k] >= n)
        throw TopologyError("facet " + std::to_string(f) + " references unknown node id " +
                            std::to_string(fa.v[k]));
    }
    if (fa.v[0] == fa.v[1]) throw TopologyError("facet " + std::to_string(f) + " is degenerate");
  }

  // Conformity: at most two elements per edge (build throws otherwise), and
  // every facet entry is an actual mesh edge.
  EdgeAdjacency adj = EdgeAdjacency::build(mesh);
  for (std::size_t f = 0; f < mesh.facets.size(); ++f) {
    EdgeKey key(mesh.facets[f].v[0], mesh.facets[f].v[1]);
    if (adj.edge_elems.find(key) == adj.edge_elems.end())
      throw TopologyError("facet " + std::to_string(f) + " is not an edge of any element");
  }

  // Connectivity of the element union via edge adjacency.
  std::vector<char> seen(mesh.num_elements(), 0);
  std::queue<int> work;
  work.push(0);
  seen[0] = 1;
  int count = 1;
  std::map<EdgeKey, std::array<int, 2>>& ee = adj.edge_elems;
  std::vector<std::vector<int>> elem_nbrs(mesh.num_elements());
  for (const auto& [key, pair] : ee) {
    if (pair[1] != -1) {
      elem_nbrs[pair[0]].push_back(pair[1]);
      elem_nbrs[pair[1]].push_back(pair[0]);
    }
  }
  while (!work.empty()) {
    int e = work.front();
    work.pop();
    for (int nb : elem_nbrs[e]) {
      if (!seen[nb]) {
        seen[nb] = 1;
        ++count;
        work.push(nb);
      }
    }
  }
  if (count != mesh.num_elements()) throw TopologyError("mesh element union is not connected");
}

void validate_roles(const Mesh& mesh, const BoundaryRoles& roles) {
  for (int t : roles.sigma_tags)
    if (roles.free_tags.count(t))
      throw ConfigError("tag " + std::to_string(t) + " listed both in sigma_tags and free_tags");
  for (int t : roles.xi_tags)
    if (!roles.free_tags.count(t))
      throw ConfigError("xi tag " + std::to_string(t) + " is not a free tag");

  const std::set<int> regions = mesh.region_tags();
  for (int r : roles.omega_minus_regions)
    if (!regions.count(r))
      throw ConfigError("omega_minus region " + std::to_string(r) + " not present in mesh");

  EdgeAdjacency adj = EdgeAdjacency::build(mesh);

  // Boundary facets must be tiled by sigma/free tags, each exactly once.
  std::map<EdgeKey, int> boundary_role; // 0 unseen, 1 tagged
  for (const auto& [key, pair] : adj.edge_elems)
    if (pair[1] == -1) boundary_role[key] = 0;

  for (const auto& fa : mesh.facets) {
    EdgeKey key(fa.v[0], fa.v[1]);
    const bool is_sigma = roles.sigma_tags.count(fa.tag) > 0;
    const bool is_free = roles.free_tags.count(fa.tag) > 0;
    const bool is_fault = roles.fault_tags.count(fa.tag) > 0;
    auto bit = boundary_role.find(key);
    if (is_sigma || is_free) {
      if (bit == boundary_role.end())
        throw ConfigError("boundary-tagged facet (" + std::to_string(fa.v[0]) + "," +
                          std::to_string(fa.v[1]) + ") is interior");
      if (bit->second != 0)
        throw ConfigError("boundary facet (" + std::to_string(fa.v[0]) + "," +
                          std::to_string(fa.v[1]) + ") tagged more than once");
      bit->second = 1;
    } else if (is_fault) {
      auto it = adj.edge_elems.find(key);
      if (it->second[1] == -1)
        throw GeometryError("fault facet (" + std::to_string(fa.v[0]) + "," +
                            std::to_string(fa.v[1]) + ") lies on the outer boundary");
      const bool m0 = roles.omega_minus_regions.count(mesh.elements[it->second[0]].region) > 0;
      const bool m1 = roles.omega_minus_regions.count(mesh.elements[it->second[1]].region) > 0;
      if (m0 == m1)
        throw GeometryError("fault facet (" + std::to_string(fa.v[0]) + "," +
                            std::to_string(fa.v[1]) +
                            ") does not separate omega_minus from its complement");
    }
  }
  for (const auto& [key, tagged] : boundary_role) {
    if (!tagged)
      throw ConfigError("boundary edge (" + std::to_string(key.a) + "," + std::to_string(key.b) +
                        ") carries neither a sigma nor a free tag");
  }
}

} // namespace dislox
