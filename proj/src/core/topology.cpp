#include "core/topology.hpp"

#include <algorithm>
#include <set>

#include "core/errors.hpp"

namespace dislox {

double FaultTopology::fault_length() const {
  double len = 0.0;
  for (const auto& [a, b] : s_facet_coords) len += dist(a, b);
  return len;
}

namespace {

OrientedFacet orient_facet(const Mesh& mesh, const EdgeKey& key, int elem_minus, int elem_plus) {
  OrientedFacet f;
  f.elem_minus = elem_minus;
  f.elem_plus = elem_plus;
  // Orient a->b so the minus element is on the right; then the left normal
  // rot90(b-a) points out of omega_minus.
  const Vec2 c = mesh.element_centroid(elem_minus);
  if (cross(mesh.nodes[key.b] - mesh.nodes[key.a], c - mesh.nodes[key.a]) < 0.0) {
    f.a = key.a;
    f.b = key.b;
  } else {
    f.a = key.b;
    f.b = key.a;
  }
  return f;
}

} // namespace

FaultTopology build_fault_topology(const Mesh& mesh, const BoundaryRoles& roles) {
  validate_roles(mesh, roles);

  FaultTopology ft;
  ft.omega_minus_regions = roles.omega_minus_regions;
  ft.domain_diameter = mesh.diameter();

  EdgeAdjacency adj = EdgeAdjacency::build(mesh);
  std::set<int> boundary_nodes;
  for (const auto& [key, pair] : adj.edge_elems) {
    if (pair[1] == -1) {
      boundary_nodes.insert(key.a);
      boundary_nodes.insert(key.b);
    }
  }

  auto in_minus = [&](int elem) {
    return roles.omega_minus_regions.count(mesh.elements[elem].region) > 0;
  };

  // Gamma = edges with exactly one adjacent element in omega_minus.
  std::set<EdgeKey> gamma_keys;
  for (const auto& [key, pair] : adj.edge_elems) {
    const bool m0 = in_minus(pair[0]);
    if (pair[1] == -1) {
      if (m0) throw GeometryError("Gamma touches the outer boundary");
      continue;
    }
    const bool m1 = in_minus(pair[1]);
    if (m0 != m1) {
      gamma_keys.insert(key);
      int eminus = m0 ? pair[0] : pair[1];
      int eplus = m0 ? pair[1] : pair[0];
      ft.gamma_facets.push_back(orient_facet(mesh, key, eminus, eplus));
    }
  }
  if (gamma_keys.empty() && !roles.omega_minus_regions.empty())
    throw GeometryError("omega_minus produced an empty interface");

  // Gamma must be a closed interior 1-manifold: two incident Gamma edges per
  // node, no node on the outer boundary.
  std::map<int, int> gamma_valence;
  for (const auto& k : gamma_keys) {
    gamma_valence[k.a]++;
    gamma_valence[k.b]++;
  }
  for (const auto& [node, valence] : gamma_valence) {
    if (valence != 2)
      throw GeometryError("Gamma is not a closed manifold curve at node " + std::to_string(node));
    if (boundary_nodes.count(node)) throw GeometryError("Gamma touches the outer boundary");
    ft.gamma_nodes.push_back(node);
  }
  std::sort(ft.gamma_nodes.begin(), ft.gamma_nodes.end());

  // S = fault-tagged facets; must be part of Gamma (deduplicated).
  std::set<EdgeKey> s_keys;
  for (const auto& fa : mesh.facets) {
    if (!roles.fault_tags.count(fa.tag)) continue;
    EdgeKey key(fa.v[0], fa.v[1]);
    if (!s_keys.insert(key).second) continue;
    if (!gamma_keys.count(key))
      throw GeometryError("fault facet (" + std::to_string(key.a) + "," + std::to_string(key.b) +
                          ") is not on the boundary of omega_minus");
  }
  for (const auto& gf : ft.gamma_facets) {
    if (s_keys.count(EdgeKey(gf.a, gf.b))) ft.s_facets.push_back(gf);
  }

  if (!ft.s_facets.empty()) {
    if (ft.s_facets.size() == ft.gamma_facets.size())
      throw GeometryError("fault covers the whole interface; it must be a strict subset so the "
                          "slip can vanish on its edge");

    std::map<int, int> s_valence;
    for (const auto& sf : ft.s_facets) {
      s_valence[sf.a]++;
      s_valence[sf.b]++;
    }
    for (const auto& [node, valence] : s_valence) {
      if (valence > 2)
        throw GeometryError("non-manifold fault junction at node " + std::to_string(node));
      if (valence == 1)
        ft.s_boundary_nodes.push_back(node);
      else
        ft.s_interior_nodes.push_back(node);
    }
    std::sort(ft.s_boundary_nodes.begin(), ft.s_boundary_nodes.end());
    std::sort(ft.s_interior_nodes.begin(), ft.s_interior_nodes.end());
    if (ft.s_boundary_nodes.empty())
      throw GeometryError("fault has no boundary nodes (closed fault loops are not supported)");
  }

  for (const auto& sf : ft.s_facets)
    ft.s_facet_coords.emplace_back(mesh.nodes[sf.a], mesh.nodes[sf.b]);
  for (int n : ft.s_boundary_nodes) ft.s_boundary_coords.push_back(mesh.nodes[n]);

  return ft;
}

Mesh split_fault_nodes(const Mesh& mesh, FaultTopology& ft) {
  Mesh split = mesh;
  ft.split_map.clear();
  if (ft.s_facets.empty()) return split;

  auto in_minus = [&](int elem) {
    return ft.omega_minus_regions.count(mesh.elements[elem].region) > 0;
  };

  // Node -> incident elements.
  std::vector<std::vector<int>> node_elems(mesh.num_nodes());
  for (int e = 0; e < mesh.num_elements(); ++e)
    for (int k = 0; k < 3; ++k) node_elems[mesh.elements[e].v[k]].push_back(e);

  for (int node : ft.s_interior_nodes) {
    const int dup = split.num_nodes();
    split.nodes.push_back(split.nodes[node]);
    ft.split_map[node] = dup;
    for (int e : node_elems[node]) {
      if (in_minus(e)) continue; // minus side keeps the original id
      for (int k = 0; k < 3; ++k)
        if (split.elements[e].v[k] == node) split.elements[e].v[k] = dup;
    }
  }
  return split;
}

double weight_function(const FaultTopology& ft, const Vec2& x) {
  if (ft.s_facet_coords.empty()) throw DomainError("fault is empty");
  const double tol = 1e-12 * ft.domain_diameter;
  double on_fault = 1e300;
  for (const auto& [a, b] : ft.s_facet_coords)
    on_fault = std::min(on_fault, point_segment_dist(x, a, b));
  if (on_fault > tol)
    throw DomainError("point is not on the fault (distance " + std::to_string(on_fault) + ")");
  double rho = 1e300;
  for (const auto& p : ft.s_boundary_coords) rho = std::min(rho, dist(x, p));
  return rho;
}

} // namespace dislox
